# Tests for core functionality
