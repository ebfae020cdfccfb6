from hypothesis import HealthCheck, settings

# Property tests here do real combinatorial work per example (exact oracles,
# recursive colorings), so wall-clock deadlines would only add flakiness.
settings.register_profile(
    "combinatorial",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("combinatorial")
