# Tests package for Agentic Knowledge Graph Construction
# This package contains all test files for the project
