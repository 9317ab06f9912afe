import os
import sys

from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

CORPUS = os.path.join(os.path.dirname(__file__), "..", "corpus")
sys.path.insert(0, os.path.dirname(__file__))
