// Loads a distance table, reports its coefficient, then checks and iterates a
// self-map given as an expression.
//
//   custom_space data/example-3.4-finite.json

#include <cstdio>

#include "contractum/contractum.hpp"

int main(int argc, char** argv) {
    using namespace contractum;
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s SPACE.json|SPACE.csv\n", argv[0]);
        return 2;
    }
    try {
        const FiniteSpace space = load_space(argv[1]);
        const auto flags = classify_space(space);
        std::printf("%zu points, metric: %s, rectangular: %s\n", space.size(), flags.is_metric ? "yes" : "no",
                    flags.is_rectangular ? "yes" : "no");
        if (space.size() >= 4)
            std::printf("minimal coefficient: %s\n", format_real(minimal_coefficient(space).value).c_str());

        // Collapse everything onto the first point.
        const double target = space.value(0);
        const SelfMap T = [target](double) { return target; };
        ContractionSpec spec{Variant::Reich, 2.0, make_pair("ln", "inv_1p", FamilyTag::Im), std::nullopt, std::nullopt};
        const auto report = verify_over_finite(spec, space, T);
        std::printf("reich check: %llu pairs, %llu vacuous, %llu violated\n",
                    static_cast<unsigned long long>(report.pairs), static_cast<unsigned long long>(report.vacuous),
                    static_cast<unsigned long long>(report.violated));

        const auto r = iterate(T, space.value(space.size() - 1),
                               [&](double a, double b) { return space.distance(a, b); });
        std::printf("iterate: %s at %s\n", std::string(to_string(r.status)).c_str(), space.label_of(r.point).c_str());
    } catch (const error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
