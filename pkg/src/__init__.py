"""
bwclusters - Burrows-Wheeler clustering words and the languages that hold them.

Decides which finite words cluster under the Burrows-Wheeler transform, checks
the order condition on bispecial factors of circular languages, and bounds or
enumerates the clustering factors of Sturmian, Arnoux-Rauzy, episturmian and
r-Bonacci languages.
"""

__version__ = "0.1.0"
