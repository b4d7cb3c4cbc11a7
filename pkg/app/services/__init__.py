"""Coding, channel and experiment services"""
