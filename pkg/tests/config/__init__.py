# Tests for configuration management
