"""
qwass - Quantum Wasserstein information geometry

Transport metrics on density operators and Gaussian states, with natural
gradient flows, geodesic solvers and Schrödinger bridges.
"""

__version__ = "0.1.0"
__author__ = "qwass"
__description__ = "Quantum Wasserstein information geometry toolkit"
