"""
Domain Layer - Words, languages and the clustering machinery.

This layer contains:
- Words, ordered alphabets and letter permutations
- The transform, clustering certificates and the order condition
- Directive words, AR morphisms and their generated languages
- Report models and domain exceptions

This layer has NO dependencies on the application layer or the CLI.
"""
