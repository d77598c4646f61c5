"""Input schemas, reports and the CLI command model."""
