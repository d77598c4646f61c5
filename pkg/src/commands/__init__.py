"""CLI verbs: input loading, dispatch and report rendering."""
