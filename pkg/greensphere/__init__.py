"""Exact arithmetic for the C2-equivariant K(1)-local sphere.

Modules, bottom up: twoadic, modlin, ku_ring, ko_ring, classical_sphere,
green_sphere; verify, charts and app sit on top.
"""
__version__ = '1.0.0'
