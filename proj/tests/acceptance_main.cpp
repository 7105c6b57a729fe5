#include <iostream>
#include "gsums/selftest.hpp"
int main() {
    gsums::selftest::Options opts;
    return gsums::selftest::run_all(opts, std::cout) ? 0 : 1;
}
