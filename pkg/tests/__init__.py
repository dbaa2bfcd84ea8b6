# Tests package for Broker API 