#pragma once

// Versioned JSON round-trip for expansions and solved families. Coefficients
// travel as decimal strings long enough to reproduce the bit pattern at the
// stored precision.

#include "ramif/qexpansion.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace ramif {

inline nlohmann::json qexpansion_to_json(const QExpansion &e)
{
    nlohmann::json j;
    j["schema"] = 1;
    j["weights"] = {e.weights().r, e.weights().s};
    j["q_order"] = e.q_order();
    auto yr = e.y_range();
    j["y_range"] = {yr.first, yr.second};
    j["precision_bits"] = e.precision_bits();
    nlohmann::json coeffs = nlohmann::json::array();
    // deterministic order: (j, m, n) ascending
    struct Entry {
        int jj, m, n;
        std::string re, im;
    };
    std::vector<Entry> entries;
    for (const auto &[mode, lau] : e.modes()) {
        for (size_t t = 0; t < lau.a.size(); ++t) {
            const Complex &c = lau.a[t];
            if (c.is_zero()) continue;
            entries.push_back({lau.jmin + static_cast<int>(t), mode.first, mode.second,
                               c.real().str(), c.imag().str()});
        }
    }
    std::sort(entries.begin(), entries.end(), [](const Entry &a, const Entry &b) {
        if (a.jj != b.jj) return a.jj < b.jj;
        if (a.m != b.m) return a.m < b.m;
        return a.n < b.n;
    });
    for (const auto &en : entries) coeffs.push_back({en.jj, en.m, en.n, en.re, en.im});
    j["coeffs"] = std::move(coeffs);
    return j;
}

inline QExpansion qexpansion_from_json(const nlohmann::json &j)
{
    if (!j.contains("schema") || j["schema"].get<int>() != 1) {
        throw std::invalid_argument("unsupported expansion schema");
    }
    WeightPair w{j["weights"][0].get<int>(), j["weights"][1].get<int>()};
    QExpansion e(w, j["q_order"].get<int>());
    for (const auto &row : j["coeffs"]) {
        int jj = row[0].get<int>();
        int m = row[1].get<int>();
        int n = row[2].get<int>();
        Real re(row[3].get<std::string>());
        Real im(row[4].get<std::string>());
        e.set_coeff(jj, m, n, Complex(std::move(re), std::move(im)));
    }
    return e;
}

} // namespace ramif
