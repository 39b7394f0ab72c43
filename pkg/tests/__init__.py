"""Tests for pydq-lyapunov."""
