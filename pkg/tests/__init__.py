# Tests for synctrans
