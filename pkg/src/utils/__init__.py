"""Shared configuration, logging, errors and small helpers"""
