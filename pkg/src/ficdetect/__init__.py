"""ficdetect: distinguish human-written from AI-generated detective
fiction using ~100-word excerpts.

The package covers the whole workflow: cleaning and chunking novels,
generating AI rewrites through a chat-completions endpoint (or replaying
checked-in fixtures), bag-of-words features, from-scratch Naive Bayes and
MLP classifiers with four reference baselines, an evaluation harness,
human-judge quiz statistics, and a small CLI + HTTP service.
"""

from . import corpus, evaluation, features, judges, models, pipeline, stats, textgen
from .corpus import (AI, HUMAN, Dataset, Excerpt, LengthStats, RawBook,
                     assemble_dataset, balance_lengths, chunk_text,
                     length_stats, strip_boilerplate)
from .evaluation import (ConfusionMatrix, EvalReport, MetricsSummary,
                         SplitSpec, compute_metrics, generalisation_run,
                         run_experiment, split_dataset)
from .features import DocTermMatrix, Vocabulary, build_vocabulary, tokenize, vectorize
from .judges import Quiz, TTestResult, build_quiz, score_result, t_test_upper
from .models import (MLPConfig, MLPModel, NBModel, Prediction, load_model,
                     mlp_gradient_check, mlp_predict, mlp_train, nb_predict,
                     nb_train, save_model)
from .textgen import (GenConfig, GenJob, HttpTransport, ReplayTransport,
                      generate_prompt_only, rewrite_excerpt, run_generation_job)

__version__ = "0.1.0"
