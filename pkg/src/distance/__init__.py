"""Minimum-distance search and estimation"""
