// Scan the two-term certificate family |A -/+ B|^2 + |tA +/- B|^2 vs
// (1+t)|A|^2 + (1+1/t)|B|^2 over a range of t and print each verdict with
// lambda_min of the coefficient matrix and the scalar witness when refuted.
//
//   dichotomy_scan [lo] [hi] [steps]

#include <cstdio>
#include <cstdlib>

#include "bohr/bohr.hpp"

int main(int argc, char** argv) {
    const double lo = argc > 1 ? std::atof(argv[1]) : -2.0;
    const double hi = argc > 2 ? std::atof(argv[2]) : 2.0;
    const int steps = argc > 3 ? std::atoi(argv[3]) : 20;

    std::printf("%10s  %12s  %-9s  witness\n", "t", "lambda_min", "verdict");
    for (int k = 0; k <= steps; ++k) {
        const double t = lo + (hi - lo) * k / steps;
        if (std::abs(t) < 1e-6) continue;
        const auto problem = bohr::thm22_template(t, bohr::Thm22Direction::Standard,
                                                  bohr::Thm22Sign::MinusPlus);
        const bohr::CertificateResult cert = bohr::certify(problem);
        if (cert.certified()) {
            std::printf("%10.4f  %12.5e  certified\n", t, cert.lambda_min);
        } else {
            const auto& v = *cert.witness;
            std::printf("%10.4f  %12.5e  refuted    A1=%+.4f A2=%+.4f -> value %.5e\n", t,
                        cert.lambda_min, v[0], v[1],
                        bohr::scalar_witness_value(problem, v));
        }
    }
    return 0;
}
