"""Core configuration and utilities for PolarFade"""
