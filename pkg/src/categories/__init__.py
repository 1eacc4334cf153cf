"""
Categories of the engine: the global site, finite G-spaces, functor
categories, Kan extensions and sphere actions.
"""
