"""Test suite for LLM Research Intelligence Hub"""
