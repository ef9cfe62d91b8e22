#pragma once

// The worked-example catalog: face vectors and bipyramid volumes, closed-form
// Mahler values, the C_n polynomial family, the bipyramid-volume inequality
// verifier, and the reproduction tables.

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tordim/graph.hpp"
#include "tordim/laurent.hpp"
#include "tordim/mahler.hpp"
#include "tordim/specfun.hpp"

namespace tordim {

// ---------------------------------------------------------------------------
// face vectors
// ---------------------------------------------------------------------------

// multiset of face degrees of a torus link diagram
struct FaceVector {
    std::map<int, int> counts;  // degree -> multiplicity

    bool operator==(const FaceVector&) const = default;
};

inline double bipyramid_volume_of(const FaceVector& fv) {
    double total = 0.0;
    for (const auto& [degree, count] : fv.counts) {
        if (degree < 2) throw std::invalid_argument("face degree must be >= 2");
        if (count <= 0) throw std::invalid_argument("face multiplicity must be positive");
        total += count * bipyramid_volume(degree);
    }
    return total;
}

// ---------------------------------------------------------------------------
// catalog records
// ---------------------------------------------------------------------------

struct LinkRecord {
    std::string name;
    std::optional<std::string> graph_file;  // relative to the data directory
    LaurentPoly2 charpoly;
    std::optional<FaceVector> face_vector;
    std::optional<std::string> closed_form_id;
    std::optional<double> paper_vol_diamond;        // as printed in the source
    std::optional<double> paper_hyperbolic_volume;  // reference constant only
    std::optional<int> crossing_number;
};

struct ManifestEntry {
    std::map<std::string, std::string> fields;
};

// `key: value` lines, records separated by blank lines, `#` comments
inline std::vector<ManifestEntry> parse_manifest(const std::string& text) {
    std::vector<ManifestEntry> entries;
    ManifestEntry current;
    std::istringstream in(text);
    std::string line;
    auto flush = [&] {
        if (!current.fields.empty()) entries.push_back(std::move(current));
        current = {};
    };
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') continue;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            flush();
            continue;
        }
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("manifest: expected 'key: value' in line: " + line);
        std::string key = line.substr(0, colon);
        std::string value = line.substr(colon + 1);
        auto trim = [](std::string& s) {
            s.erase(0, s.find_first_not_of(" \t"));
            s.erase(s.find_last_not_of(" \t\r") + 1);
        };
        trim(key);
        trim(value);
        current.fields[key] = value;
    }
    flush();
    return entries;
}

inline FaceVector parse_face_vector(const std::string& text) {
    FaceVector fv;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        auto colon = tok.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("face vector: expected degree:count, got " + tok);
        fv.counts[std::stoi(tok.substr(0, colon))] += std::stoi(tok.substr(colon + 1));
    }
    return fv;
}

namespace detail {

// Single source of the catalog; data/catalog.manifest ships the same text.
inline constexpr const char* kCatalogManifest = R"(# Catalog of biperiodic alternating links and reference polynomials.
# polynomial: characteristic polynomial of the toroidal dimer model
# faces:      face-degree multiset of the quotient link diagram
# vol_diamond / hyperbolic_volume: reference values as printed in the source

name: W
title: square weave
graph: weave.graph
polynomial: -(4 + w + w^-1 + z + z^-1)
faces: 4:2
closed_form: W
vol_diamond: 7.32772
hyperbolic_volume: 7.32772
crossings: 2

name: L
title: triaxial link
graph: triaxial.graph
polynomial: 6 - w - w^-1 - z - z^-1 - z*w^-1 - w*z^-1
faces: 3:2 6:1
closed_form: L
vol_diamond: 10.1494
hyperbolic_volume: 10.1494
crossings: 3

name: R
title: rhombitrihexagonal link
graph: rhombitrihexagonal.graph
polynomial: 6*(6 - w - w^-1 - z - z^-1 - z*w^-1 - w*z^-1)
faces: 3:2 4:3 6:1
closed_form: R
vol_diamond: 21.141
hyperbolic_volume: 21.141
crossings: 6

name: C0
title: chain link C_0 (doubled fundamental domain)
polynomial: (-z*(w^2 - 4*w + 1) + w^2 + 4*w + 1)^2
faces: 3:4 6:2
closed_form: C0
vol_diamond: 20.29883212
hyperbolic_volume: 20.29883212
crossings: 6

name: C1
title: chain link C_1
polynomial: (1 + w^2)*(1 - z)^2 - w*(6 + 20*z + 6*z^2)
faces: 3:2 4:2 6:1
closed_form: C1
vol_diamond: 17.47714082
hyperbolic_volume: 17.47714082
crossings: 5

name: K
title: medial link of the 8-8-4 tiling
graph: medial-8-8-4.graph
polynomial: -w^2*z^2 + 6*w^2*z + 6*w*z^2 - w^2 + 28*w*z - z^2 + 6*w + 6*z - 1
faces: 3:4 4:1 8:1
closed_form: K
vol_diamond: 19.6379
hyperbolic_volume: 19.559
crossings: 6

name: typical
title: typical biperiodic alternating link, genus-8 polynomial
polynomial: w*z^2 + z^3 - 2*w*z + 104*z^2 - 2*z^3*w^-1 + w + 510*z + 510*z^2*w^-1 + z^3*w^-2 - 2456*z*w^-1 + 104*z^2*w^-2 + 510*w^-1 + z^-1 + 510*z*w^-2 + z^2*w^-3 + 104*w^-2 - 2*w^-1*z^-1 - 2*z*w^-3 + w^-3 + w^-2*z^-1 + 104
faces: 3:8 4:1 5:4 8:1
vol_diamond: 47.704628
hyperbolic_volume: 47.644829
crossings: 14

name: smyth
title: Smyth's polynomial 1 + x + y
polynomial: 1 + z + w
closed_form: smyth

name: fig8-apoly
title: A-polynomial of the figure-eight knot (L = z, M = w)
polynomial: w^4 + z*(1 - w^2 - 2*w^4 - w^6 + w^8) - z^2*w^4
closed_form: fig8
)";

}  // namespace detail

inline const std::string& catalog_manifest_text() {
    static const std::string text = detail::kCatalogManifest;
    return text;
}

inline std::vector<LinkRecord> records_from_manifest(const std::string& text) {
    std::vector<LinkRecord> records;
    for (const auto& entry : parse_manifest(text)) {
        LinkRecord r;
        auto get = [&](const char* key) -> std::optional<std::string> {
            auto it = entry.fields.find(key);
            if (it == entry.fields.end()) return std::nullopt;
            return it->second;
        };
        r.name = get("name").value();
        r.charpoly = LaurentPoly2::parse(get("polynomial").value());
        r.graph_file = get("graph");
        r.closed_form_id = get("closed_form");
        if (auto f = get("faces")) r.face_vector = parse_face_vector(*f);
        if (auto v = get("vol_diamond")) r.paper_vol_diamond = std::stod(*v);
        if (auto v = get("hyperbolic_volume")) r.paper_hyperbolic_volume = std::stod(*v);
        if (auto v = get("crossings")) r.crossing_number = std::stoi(*v);
        records.push_back(std::move(r));
    }
    return records;
}

inline const std::vector<LinkRecord>& builtin_links() {
    static const std::vector<LinkRecord> records = records_from_manifest(catalog_manifest_text());
    return records;
}

// ---------------------------------------------------------------------------
// the C_n family
// ---------------------------------------------------------------------------

// (1+w^2)(1-z)^{n+1} + (-1)^n w sum_{j=0}^{n+1} C(2n+4, 2j+1) z^j
inline LaurentPoly2 cn_polynomial(int n) {
    if (n < 0) throw std::invalid_argument("cn_polynomial: n must be >= 0");
    LaurentPoly2 one_minus_z = LaurentPoly2::constant(1) - LaurentPoly2::variable_z();
    LaurentPoly2 head =
        (LaurentPoly2::constant(1) + LaurentPoly2::variable_w(2)) * one_minus_z.pow(n + 1);
    LaurentPoly2 tail;
    BigInt binom = 2 * n + 4;  // C(2n+4, 1)
    for (int j = 0; j <= n + 1; ++j) {
        tail.add_term({j, 1}, (n % 2 == 0) ? binom : -binom);
        // C(2n+4, 2j+3) from C(2n+4, 2j+1)
        binom = binom * (2 * n + 3 - 2 * j) / (2 * j + 2);
        binom = binom * (2 * n + 2 - 2 * j) / (2 * j + 3);
    }
    return head + tail;
}

inline FaceVector cn_face_vector(int n) {
    FaceVector fv;
    fv.counts[3] = 2;
    fv.counts[6] = 1;
    if (n > 0) fv.counts[4] = 2 * n;
    return fv;
}

// Paper values of Table 1 (2 pi m(p_{C_n})); rows 9 and 11 carry only four
// decimal places there.
struct CnPaperRow {
    int n;
    double lower;  // 10 v_tet + 2 n v_oct as printed
    double two_pi_m;
    bool four_decimals_only;
};

inline const std::vector<CnPaperRow>& cn_paper_table() {
    static const std::vector<CnPaperRow> rows = {
        {2, 24.80486557, 24.96932402, false},
        {3, 32.13259032, 32.27389896, false},
        {4, 39.46031507, 39.61527996, false},
        {5, 46.78803983, 46.93541034, false},
        {6, 54.11576458, 54.26836944, false},
        {7, 61.44348933, 61.59270586, false},
        {8, 68.77121409, 68.92297116, false},
        {9, 76.09893884, 76.2489, true},
        {10, 83.42666359, 83.57804426, false},
        {11, 90.75438835, 90.9047, true},
        {12, 98.08211310, 98.23330183, false},
    };
    return rows;
}

// ---------------------------------------------------------------------------
// closed forms (Theorems 4.1-4.6, Corollary 4.3, and the two intro identities)
// ---------------------------------------------------------------------------

inline double closed_form_2pi_m(const std::string& id) {
    using std::complex;
    using std::log;
    using std::sqrt;
    const double pi = std::numbers::pi;
    const auto& vc = volume_constants();
    if (id == "W") return 8.0 * bloch_wigner(complex<double>(0.0, 1.0));
    if (id == "L") return 10.0 * bloch_wigner(std::polar(1.0, pi / 3.0));
    if (id == "R") return 2.0 * pi * log(6.0) + 10.0 * vc.v_tet;
    if (id == "C0")
        return 16.0 * bloch_wigner(complex<double>(0.0, 2.0 + sqrt(3.0))) +
               8.0 * pi / 3.0 * log(2.0 + sqrt(3.0));
    if (id == "C1")
        return 16.0 * bloch_wigner(complex<double>(0.0, 1.0 + sqrt(2.0))) +
               2.0 * pi * log(1.0 + sqrt(2.0));
    if (id == "K") {
        complex<double> s = sqrt(complex<double>(7.0, 4.0 * sqrt(2.0))) / 3.0;
        return std::acos(-7.0 / 9.0) * log(17.0 + 12.0 * sqrt(2.0)) +
               8.0 * bloch_wigner(complex<double>(0.0, 1.0)) + 4.0 * bloch_wigner(s) -
               4.0 * bloch_wigner(-s);
    }
    if (id == "smyth") return 2.0 * vc.v_tet;
    if (id == "fig8") return 4.0 * vc.v_tet;
    throw std::invalid_argument("no closed form registered for id '" + id + "'");
}

inline double closed_form_2pi_m(const LinkRecord& record) {
    if (!record.closed_form_id)
        throw std::invalid_argument("record '" + record.name + "' has no closed form");
    return closed_form_2pi_m(*record.closed_form_id);
}

// ---------------------------------------------------------------------------
// conjecture verification
// ---------------------------------------------------------------------------

enum class ConjectureStatus { holds_strict, holds_equality_within_tol, inconclusive, violated };

inline const char* to_string(ConjectureStatus s) {
    switch (s) {
        case ConjectureStatus::holds_strict: return "holds-strict";
        case ConjectureStatus::holds_equality_within_tol: return "holds-equality-within-tol";
        case ConjectureStatus::inconclusive: return "inconclusive";
        case ConjectureStatus::violated: return "violated";
    }
    return "?";
}

inline constexpr double kEqualityTol = 1e-6;  // absolute, on 2 pi scaled values

struct ConjectureReport {
    std::string name;
    double vol_diamond = 0.0;
    double two_pi_m = 0.0;
    double two_pi_m_error = 0.0;
    double margin = 0.0;  // two_pi_m - vol_diamond
    ConjectureStatus status = ConjectureStatus::inconclusive;
    std::optional<double> closed_form_value;
    bool closed_form_consistent = true;
    long long fiber_evaluations = 0;
};

inline ConjectureStatus classify_margin(double margin, double error) {
    if (!(error < 1e-3)) return ConjectureStatus::inconclusive;
    if (std::abs(margin) <= error + kEqualityTol)
        return ConjectureStatus::holds_equality_within_tol;
    if (margin > error) return ConjectureStatus::holds_strict;
    if (margin < -error) return ConjectureStatus::violated;
    return ConjectureStatus::inconclusive;
}

inline ConjectureReport verify_conjecture(const LinkRecord& record,
                                          const MahlerOptions& opt = {}) {
    if (record.charpoly.is_zero())
        throw std::invalid_argument("verify_conjecture: record has no polynomial");
    if (!record.face_vector && !record.paper_vol_diamond)
        throw std::invalid_argument("verify_conjecture: record has no bipyramid volume data");
    ConjectureReport rep;
    rep.name = record.name;
    rep.vol_diamond = record.face_vector ? bipyramid_volume_of(*record.face_vector)
                                         : *record.paper_vol_diamond;
    MahlerEstimate est = mahler_bivariate(record.charpoly, opt);
    const double two_pi = 2.0 * std::numbers::pi;
    rep.two_pi_m = two_pi * est.value;
    rep.two_pi_m_error = two_pi * est.error_bound;
    rep.fiber_evaluations = est.fiber_evaluations;
    if (record.closed_form_id) {
        rep.closed_form_value = closed_form_2pi_m(record);
        rep.closed_form_consistent =
            std::abs(*rep.closed_form_value - rep.two_pi_m) <= rep.two_pi_m_error + kEqualityTol;
    }
    rep.margin = rep.two_pi_m - rep.vol_diamond;
    rep.status = classify_margin(rep.margin, rep.two_pi_m_error);
    return rep;
}

// Record lookup by name (catalog names, a few aliases, and Cn family rows).
inline std::optional<LinkRecord> find_record(const std::string& name) {
    std::string key = name;
    for (auto& ch : key) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    static const std::map<std::string, std::string> aliases = {
        {"weave", "W"},     {"square-weave", "W"},       {"triaxial", "L"},
        {"rhombitrihexagonal", "R"}, {"8-8-4", "K"},     {"884", "K"},
    };
    std::string target = aliases.count(key) ? aliases.at(key) : name;
    for (const auto& r : builtin_links()) {
        std::string rn = r.name;
        for (auto& ch : rn) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        std::string tn = target;
        for (auto& ch : tn) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        if (rn == tn) return r;
    }
    // C_n family rows (n >= 2; C0 and C1 are full catalog records)
    if (key.size() >= 2 && key[0] == 'c' &&
        key.find_first_not_of("0123456789", 1) == std::string::npos) {
        int n = std::stoi(key.substr(1));
        if (n >= 0) {
            LinkRecord r;
            r.name = "C" + std::to_string(n);
            r.charpoly = cn_polynomial(n);
            r.face_vector = cn_face_vector(n);
            return r;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// reproduction tables
// ---------------------------------------------------------------------------

struct IntroRow {
    std::string label;
    LaurentPoly2 poly;
    double m = 0.0, m_error = 0.0;
    double vol_diamond_over_2pi = 0.0;
    double smyth = 0.0;
    double paper_m = 0.0, paper_vol = 0.0, paper_smyth = 0.0;
};

// the five-polynomial comparison table from the introduction
inline std::vector<IntroRow> comparison_table(const MahlerOptions& opt = {}) {
    struct Spec {
        const char* label;
        LaurentPoly2 poly;
        FaceVector fv;
        double paper_m, paper_vol, paper_smyth;
    };
    auto rec = [&](const char* name) {
        auto r = find_record(name);
        if (!r) throw std::logic_error("missing catalog record");
        return *r;
    };
    const std::vector<Spec> specs = {
        {"P1", rec("W").charpoly, FaceVector{{{4, 2}}}, 1.16624361, 1.16624361, 0.0},
        {"P2", rec("L").charpoly, FaceVector{{{3, 2}, {6, 1}}}, 1.61532973, 1.61532973, 0.0},
        {"P3", cn_polynomial(0), FaceVector{{{3, 2}, {6, 1}}}, 1.65546767, 1.61532973, 1.31695789},
        {"P4", rec("C1").charpoly, FaceVector{{{3, 2}, {4, 2}, {6, 1}}}, 2.79856868, 2.78157335,
         1.76274717},
        {"P5", rec("K").charpoly, FaceVector{{{3, 4}, {4, 1}, {8, 1}}}, 3.14673710, 3.12553175,
         1.76274717},
    };
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<IntroRow> rows;
    for (const auto& s : specs) {
        IntroRow row;
        row.label = s.label;
        row.poly = s.poly;
        MahlerEstimate est = mahler_bivariate(s.poly, opt);
        row.m = est.value;
        row.m_error = est.error_bound;
        row.vol_diamond_over_2pi = bipyramid_volume_of(s.fv) / two_pi;
        row.smyth = smyth_lower_bound(s.poly);
        row.paper_m = s.paper_m;
        row.paper_vol = s.paper_vol;
        row.paper_smyth = s.paper_smyth;
        rows.push_back(std::move(row));
    }
    return rows;
}

struct CnRow {
    int n = 0;
    double lower = 0.0;     // 10 v_tet + 2 n v_oct
    double two_pi_m = 0.0;
    double error = 0.0;     // on the 2 pi scale
    bool budget_ok = true;
    std::optional<double> paper_two_pi_m;
    std::optional<double> paper_lower;
    bool paper_four_decimals = false;
};

inline std::vector<CnRow> cn_table(int n_min, int n_max, const MahlerOptions& opt = {}) {
    if (n_min < 0 || n_min > n_max) throw std::invalid_argument("cn_table: bad range");
    const double two_pi = 2.0 * std::numbers::pi;
    const auto& vc = volume_constants();
    std::vector<CnRow> rows;
    for (int n = n_min; n <= n_max; ++n) {
        CnRow row;
        row.n = n;
        row.lower = 10.0 * vc.v_tet + 2.0 * n * vc.v_oct;
        MahlerEstimate est = mahler_bivariate(cn_polynomial(n), opt);
        row.two_pi_m = two_pi * est.value;
        row.error = two_pi * est.error_bound;
        row.budget_ok = est.error_bound <= opt.target;
        for (const auto& p : cn_paper_table())
            if (p.n == n) {
                row.paper_two_pi_m = p.two_pi_m;
                row.paper_lower = p.lower;
                row.paper_four_decimals = p.four_decimals_only;
            }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace tordim
