"""wallguard: wall-message moderation with a from-scratch Naive Bayes
classifier, a tolerance-threshold policy, an SVM baseline, and an
event-sourced review-queue service."""

from importlib import resources

from .corpus import (
    Corpus,
    RawMessage,
    StopList,
    TokenizedDoc,
    corpus_to_xml,
    load_corpus,
    parse_corpus_xml,
    preprocess,
    preprocess_corpus,
    split,
    tokenize_whitespace,
)
from .labels import LABELS, NON_NEUTRAL, ClassLabel
from .nbayes import (
    ClassPosterior,
    NbModel,
    classify,
    complement_posterior,
    load_model,
    posterior,
    save_model,
    token_likelihood,
    train,
)
from .evaluate import (
    AblationReport,
    AblationVariant,
    ClassMetrics,
    ComparisonReport,
    ConfusionMatrix,
    EvalConfig,
    EvalReport,
    benchmark_compare,
    evaluate,
    strip_timings,
    timing_preprocessing_ablation,
)
from .reports import (
    render_ablation_table,
    render_comparison_table,
    render_csv,
    render_eval_table,
    report_from_json,
    report_to_json,
)
from .svm import (
    FeatureVector,
    SvmHyperparams,
    SvmModel,
    featurize,
    load_svm_model,
    predict_svm,
    save_svm_model,
    train_svm,
)
from .policy import (
    DecisionKind,
    ModerationDecision,
    PolicyConfig,
    UserProfile,
    decide,
    is_publishable,
    update_user,
)

__version__ = "0.1.0"


def default_stoplist_path() -> str:
    """Path of the stop-word list bundled with the package."""
    return str(resources.files("wallguard").joinpath("data/stopwords.txt"))


def bundled_corpus_path() -> str:
    """Path of the sample labeled corpus bundled with the package."""
    return str(resources.files("wallguard").joinpath("data/sample_corpus.xml"))
