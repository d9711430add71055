#include "acceptance.hpp"

int main() { return evac::accept::run_all_and_report() ? 0 : 1; }
