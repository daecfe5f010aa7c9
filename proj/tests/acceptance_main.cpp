// Acceptance suite: runs every verification criterion and prints one
// pass/fail line per case. Exit code 0 iff all cases pass.

#include <cstdio>

#include "tfq/parallel.hpp"
#include "tfq/verify.hpp"

int main() {
    tfq::configure_threads();
    tfq::VerifyReport rep = tfq::run_verify("all");
    std::fputs(tfq::verify_report_text(rep).c_str(), stdout);
    return rep.overall ? 0 : 1;
}
