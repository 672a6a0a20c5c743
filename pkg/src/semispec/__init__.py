"""Exact computational algebra for finite idempotent semirings."""
