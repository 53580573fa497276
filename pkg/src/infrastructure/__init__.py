"""
Infrastructure Layer - Concrete implementations of domain interfaces.

Currently the structlog-backed observability service.
"""
