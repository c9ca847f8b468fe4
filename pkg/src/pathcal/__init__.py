"""Path-loss calibration for RSSI site surveys.

Predict received signal strength with free-space and log-distance path loss,
fit the log-distance exponent to a measured campaign, and report how well the
model tracks the measurements.
"""

__version__ = "0.1.0"

from pathcal.calibration import (
    ENVIRONMENT_CLASSES,
    EnvironmentClass,
    FitResult,
    classify_environment,
    evaluate_exponent,
    fit_exponent_grid,
    fit_exponent_least_squares,
    select_best_exponent,
)
from pathcal.errors import DegenerateError, ValidationError
from pathcal.metrics import ErrorTable, error_table, relative_error, threshold_report
from pathcal.propagation import (
    Prediction,
    coverage_distance,
    fspl_loss,
    ldpl_loss,
    predict_rssi,
    predict_table,
)
from pathcal.regression import RegressionResult, log_regression, regression_predict
from pathcal.survey import (
    PAPER_RADIO,
    FreeSpace,
    LogDistance,
    MeasurementPoint,
    RadioConfig,
    SurveyCampaign,
    ingest_campaign,
    load_campaign,
    point_mean,
)
