"""Integration tests: full flow runs and the command line"""
