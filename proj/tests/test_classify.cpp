#include "doctest.h"
TEST_CASE("placeholder classify") { CHECK(true); }
