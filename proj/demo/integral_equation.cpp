// x(t) = lambda int_0^1 (c sin x(r) + t r) dr on a 129-node grid, then the
// same problem with Simpson weights.

#include <cmath>
#include <cstdio>

#include "contractum/contractum.hpp"

int main() {
    using namespace contractum;
    IntegralProblem p;
    p.a = 0.0;
    p.b = 1.0;
    p.s = 2.0;
    p.m = 129;
    p.lambda = lambda_bound(p.a, p.b, p.s);
    const double c = std::exp(-1.0) * std::pow(p.s, -(2.0 + p.s));
    p.kernel = [c](double t, double r, double x) { return c * std::sin(x) + t * r; };

    const auto kernel = verify_kernel_condition(p, 5000, 1);
    std::printf("kernel condition on 5000 samples: %s\n", kernel.pass() ? "pass" : "violated");

    for (auto rule : {Quadrature::trapezoid, Quadrature::simpson}) {
        p.rule = rule;
        const auto sol = solve(p, p.sample([](double) { return 0.0; }), {1e-24, 1000, false});
        // lambda t / 2 is the exact solution of the forcing term alone
        std::printf("%s: %s after %zu steps, x(1) = %s (forcing only %s)\n",
                    rule == Quadrature::trapezoid ? "trapezoid" : "simpson",
                    std::string(to_string(sol.result.status)).c_str(), sol.result.iterations,
                    format_real(sol.result.point.values.back()).c_str(), format_real(p.lambda / 2.0).c_str());
    }
    return 0;
}
