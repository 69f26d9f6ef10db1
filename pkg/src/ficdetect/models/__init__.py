"""Classifiers: from-scratch Naive Bayes and MLP plus reference baselines."""

from .base import LABELS, AI_IDX, HUMAN_IDX, Prediction
from .baselines import (BASELINE_KINDS, DecisionTreeBaseline,
                        LinearSVMBaseline, LogisticRegressionBaseline,
                        RandomForestBaseline, baseline_train_predict,
                        make_baseline)
from .mlp import (DEFAULT_HIDDEN, MLPConfig, MLPModel, mlp_gradient_check,
                  mlp_predict, mlp_train)
from .naive_bayes import DEFAULT_ALPHA, NBModel, nb_log_joint, nb_predict, nb_train
from .persistence import FORMAT_VERSION, load_model, save_model

__all__ = [
    "LABELS", "AI_IDX", "HUMAN_IDX", "Prediction",
    "BASELINE_KINDS", "DecisionTreeBaseline", "LinearSVMBaseline",
    "LogisticRegressionBaseline", "RandomForestBaseline",
    "baseline_train_predict", "make_baseline",
    "DEFAULT_HIDDEN", "MLPConfig", "MLPModel", "mlp_gradient_check",
    "mlp_predict", "mlp_train",
    "DEFAULT_ALPHA", "NBModel", "nb_log_joint", "nb_predict", "nb_train",
    "FORMAT_VERSION", "load_model", "save_model",
]
