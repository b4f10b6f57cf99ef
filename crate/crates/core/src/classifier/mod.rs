//! Linear SVM, probability calibration, and regularization tuning.

mod calibration;
mod svm;
mod tuning;

pub use calibration::{fit_calibration, fit_sigmoid, CalibrationModel};
pub use svm::{decision_values, train_svm, LinearSvmModel, SvmParams, TrainingMeta};
pub use tuning::{cv_correct, stratified_folds, tune_c, DEFAULT_C_GRID, DEFAULT_FOLDS};
