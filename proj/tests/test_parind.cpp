#include "doctest.h"
TEST_CASE("placeholder parind") { CHECK(true); }
