import random
from fractions import Fraction

from hypothesis import HealthCheck, settings

settings.register_profile("repo", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


def frac(rng, span=12, den=5):
    return Fraction(rng.randint(-span * den, span * den), rng.randint(1, den))


def seeded(seed):
    return random.Random(seed)
