#include "isocycle/modpoly.hpp"

#include <cstdlib>
#include <fstream>

#include "isocycle/errors.hpp"

namespace isocycle {

ModularPolynomial modpoly_from_entries(int level,
                                       const std::vector<std::tuple<int, int, std::string>>& triples) {
    if (level < 2) fail(errc::degree_mismatch, "level must be a prime >= 2");
    ModularPolynomial mp;
    mp.level = level;
    int max_exp = 0;
    for (const auto& [i, j, c] : triples) {
        if (i < 0 || j < 0) fail(errc::parse_error, "negative exponent");
        for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
            auto it = mp.entries.find({a, b});
            if (it != mp.entries.end() && it->second != c)
                fail(errc::parse_error, "conflicting symmetric entries at [" + std::to_string(a) +
                                            "," + std::to_string(b) + "]");
            mp.entries[{a, b}] = c;
        }
        max_exp = std::max({max_exp, i, j});
    }
    if (max_exp != level + 1)
        fail(errc::degree_mismatch, "max exponent " + std::to_string(max_exp) + " but level " +
                                        std::to_string(level) + " requires " + std::to_string(level + 1));
    auto lead = mp.coefficient(level + 1, 0);
    if (!lead || *lead != "1") fail(errc::degree_mismatch, "polynomial is not monic in X");
    for (const auto& [key, c] : mp.entries)
        if (key.first == level + 1 && key.second > 0)
            fail(errc::degree_mismatch, "degree in X exceeds level+1");
    return mp;
}

ModularPolynomial load_modpoly(const std::filesystem::path& path, int level) {
    std::ifstream in(path);
    if (!in) fail(errc::missing_file, path.string());
    std::vector<std::tuple<int, int, std::string>> triples;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t pos = line.find('#');
        if (pos != std::string::npos) line.erase(pos);
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto bad = [&](const std::string& what, size_t col) {
            fail(errc::parse_error,
                 path.filename().string() + ":" + std::to_string(lineno) + ":" +
                     std::to_string(col + 1) + ": " + what);
        };
        if (line[first] != '[') bad("expected '['", first);
        size_t comma = line.find(',', first);
        size_t close = line.find(']', first);
        if (comma == std::string::npos || close == std::string::npos || comma > close)
            bad("malformed exponent pair", first);
        int i = 0, j = 0;
        try {
            i = std::stoi(line.substr(first + 1, comma - first - 1));
            j = std::stoi(line.substr(comma + 1, close - comma - 1));
        } catch (const std::exception&) {
            bad("malformed exponent pair", first);
        }
        size_t cstart = line.find_first_not_of(" \t", close + 1);
        if (cstart == std::string::npos) bad("missing coefficient", close);
        size_t cend = line.find_last_not_of(" \t");
        std::string c = line.substr(cstart, cend - cstart + 1);
        size_t k = (c[0] == '-' || c[0] == '+') ? 1 : 0;
        if (k == c.size()) bad("missing coefficient digits", cstart);
        for (; k < c.size(); ++k)
            if (c[k] < '0' || c[k] > '9') bad("bad coefficient character", cstart + k);
        triples.emplace_back(i, j, std::move(c));
    }
    return modpoly_from_entries(level, triples);
}

ReducedModPoly reduce_modpoly(const ModularPolynomial& mp, u64 p) {
    ReducedModPoly out;
    out.level = mp.level;
    out.p = p;
    out.entries.reserve(mp.entries.size());
    for (const auto& [key, c] : mp.entries)
        out.entries.emplace_back(key.first, key.second, reduce_integer_string(c, p));
    return out;
}

Poly specialize(const ReducedModPoly& rmp, const Fp2& j0, const FieldContext& ctx) {
    int deg = rmp.level + 1;
    std::vector<Fp2> pw(deg + 1);
    pw[0] = ctx.one();
    for (int k = 1; k <= deg; ++k) pw[k] = ctx.mul(pw[k - 1], j0);
    std::vector<Fp2> coeffs(deg + 1);
    for (const auto& [i, j, c] : rmp.entries) {
        Fp2 term = ctx.mul(Fp2{c, 0}, pw[j]);
        coeffs[i] = ctx.add(coeffs[i], term);
    }
    return Poly(std::move(coeffs));
}

Poly specialize(const ModularPolynomial& mp, const Fp2& j0, const FieldContext& ctx) {
    return specialize(reduce_modpoly(mp, ctx.p()), j0, ctx);
}

Fp2 evaluate(const ReducedModPoly& rmp, const Fp2& u, const Fp2& v, const FieldContext& ctx) {
    int deg = rmp.level + 1;
    std::vector<Fp2> pu(deg + 1), pv(deg + 1);
    pu[0] = pv[0] = ctx.one();
    for (int k = 1; k <= deg; ++k) {
        pu[k] = ctx.mul(pu[k - 1], u);
        pv[k] = ctx.mul(pv[k - 1], v);
    }
    Fp2 acc{};
    for (const auto& [i, j, c] : rmp.entries) acc = ctx.add(acc, ctx.mul(Fp2{c, 0}, ctx.mul(pu[i], pv[j])));
    return acc;
}

bool symmetry_check(const ModularPolynomial& mp, const FieldContext& ctx, int trials, u64 seed) {
    ReducedModPoly rmp = reduce_modpoly(mp, ctx.p());
    u64 s = seed;
    auto next = [&s]() {
        s += 0x9e3779b97f4a7c15ULL;
        u64 z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    for (int t = 0; t < trials; ++t) {
        Fp2 u{next() % ctx.p(), next() % ctx.p()};
        Fp2 v{next() % ctx.p(), next() % ctx.p()};
        if (!(evaluate(rmp, u, v, ctx) == evaluate(rmp, v, u, ctx))) return false;
    }
    return true;
}

std::filesystem::path ModPolyDB::resolve_dir(const std::optional<std::string>& flag) {
    if (flag && !flag->empty()) return *flag;
    if (const char* env = std::getenv("ISOCYCLE_MODPOLY_DIR"); env && *env) return env;
    return "data/phi";
}

std::filesystem::path ModPolyDB::path_for(int level) const {
    char name[32];
    std::snprintf(name, sizeof(name), "phi_j_%03d.txt", level);
    return dir_ / name;
}

bool ModPolyDB::available(int level) const {
    return loaded_.count(level) > 0 || std::filesystem::exists(path_for(level));
}

std::vector<int> ModPolyDB::available_levels() const {
    std::vector<int> out;
    std::error_code ec;
    for (const auto& e : std::filesystem::directory_iterator(dir_, ec)) {
        const std::string name = e.path().filename().string();
        int level = 0;
        if (std::sscanf(name.c_str(), "phi_j_%d.txt", &level) == 1) out.push_back(level);
    }
    std::sort(out.begin(), out.end());
    return out;
}

const ModularPolynomial& ModPolyDB::get(int level) {
    auto it = loaded_.find(level);
    if (it == loaded_.end()) it = loaded_.emplace(level, load_modpoly(path_for(level), level)).first;
    return it->second;
}

const ReducedModPoly& ModPolyDB::reduced(int level, u64 p) {
    auto key = std::pair{level, p};
    auto it = reduced_.find(key);
    if (it == reduced_.end()) it = reduced_.emplace(key, reduce_modpoly(get(level), p)).first;
    return it->second;
}

}  // namespace isocycle
