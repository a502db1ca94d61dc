"""Measure-preserving systems: spaces, groups, actions and their builders."""
