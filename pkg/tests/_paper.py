"""Published engine-room survey values, transcribed with decimal points.

Kept separate from fixtures/engine_room.csv so the fixture itself is checked
against the published numbers rather than trusted.
"""

# label, distance (m), five runs (dB), mean, LDPL3, LDPL4, LDPL5, LDPL6
TABLE1 = [
    ("P1", 7, (-45, -43, -46, -45, -47), -45.2, -25.35, -33.80, -42.26, -50.71),
    ("P2", 13, (-47, -53, -54, -54, -59), -53.4, -33.42, -44.56, -55.70, -66.84),
    ("P3", 19, (-56, -55, -55, -57, -57), -56.0, -38.36, -51.15, -63.94, -76.73),
    ("P4", 25, (-61, -58, -55, -57, -62), -58.6, -41.94, -55.92, -69.90, -83.88),
    ("P5", 31, (-63, -60, -58, -61, -61), -60.6, -44.74, -59.66, -74.57, -89.48),
    ("P6", 42, (-66, -57, -56, -57, -56), -58.4, -48.70, -64.93, -81.16, -97.40),
    ("P7", 48, (-61, -58, -64, -64, -65), -62.4, -50.44, -67.25, -84.06, -100.87),
    ("P8", 54, (-66, -64, -65, -66, -66), -65.4, -51.97, -69.30, -86.62, -103.94),
    ("P9", 60, (-68, -63, -64, -68, -68), -66.2, -53.35, -71.13, -88.91, -106.69),
    ("P10", 66, (-73, -69, -67, -68, -68), -69.0, -54.59, -72.78, -90.98, -109.17),
    ("P11", 78, (-73, -62, -63, -70, -69), -67.4, -56.76, -75.68, -94.61, -113.53),
    ("P12", 84, (-76, -67, -67, -75, -75), -72.0, -57.73, -76.97, -96.21, -115.46),
    ("P13", 90, (-83, -76, -74, -77, -74), -76.8, -58.63, -78.17, -97.71, -117.26),
    ("P14", 96, (-82, -76, -76, -78, -77), -77.8, -59.47, -79.29, -99.11, -118.94),
    ("P15", 102, (-83, -78, -77, -79, -78), -79.0, -60.26, -80.34, -100.43, -120.52),
    ("P16", 113, (-79, -79, -78, -74, -72), -76.4, -61.59, -82.12, -102.65, -123.19),
    ("P17", 119, (-88, -77, -73, -84, -80), -80.4, -62.27, -83.02, -103.78, -124.53),
    ("P18", 125, (-86, -84, -80, -84, -81), -83.0, -62.91, -83.88, -104.85, -125.82),
    ("P19", 131, (-89, -88, -82, -84, -83), -85.2, -63.52, -84.69, -105.86, -127.04),
    ("P20", 137, (-87, -84, -85, -82, -83), -84.2, -64.10, -85.47, -106.84, -128.20),
]

LABELS = [row[0] for row in TABLE1]
DISTANCES = [row[1] for row in TABLE1]
MEANS = {row[0]: row[3] for row in TABLE1}
LDPL = {n: {row[0]: row[4 + i] for row in TABLE1} for i, n in enumerate((3, 4, 5, 6))}

# integer percentages, measured mean vs LDPL4
REAL_VS_LDPL4 = dict(zip(LABELS, [25, 17, 9, 5, 2, 11, 8, 6, 7, 5,
                                  12, 7, 2, 2, 2, 7, 3, 1, 1, 2]))
# integer percentages, regression fit vs LDPL4
REGRESSION_VS_LDPL4 = dict(zip(LABELS, [19, 11, 7, 4, 2, 0, 1, 1, 2, 3,
                                        3, 4, 4, 5, 5, 5, 6, 6, 6, 6]))

R_SQUARED = 0.91
BEST_DISCRETE_EXPONENT = 4
