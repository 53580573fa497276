"""
Application Layer - Census and verification use cases.

Services wrap exhaustive domain searches with configured caps, timing spans
and metrics. Observability is injected through ``IObservabilityService``.
"""
