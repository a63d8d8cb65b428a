"""Argumentation solving with ASP encodings, and learning those encodings from examples."""
from .framework import AbaFramework, Framework, Kind, load_framework
from .encodings import Semantics, full_semantics
from .oracle import extensions, is_extension
from .learning.search import Hypothesis, LearningTask, learn

__version__ = "0.1.0"

__all__ = ["AbaFramework", "Framework", "Kind", "load_framework", "Semantics", "full_semantics", "extensions",
           "is_extension", "Hypothesis", "LearningTask", "learn"]
