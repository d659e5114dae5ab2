// Compares the OpenMP neighbor kernel against the serial reference on the
// full supersingular enumeration walk and on one batched neighbor pass.
#include <chrono>
#include <cstdio>

#include <CLI11.hpp>

#include "isocycle/ssgraph.hpp"

using namespace isocycle;

namespace {

double seconds(auto fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs parallel kernel benchmark"};
    u64 p = 99991;
    int ell = 3;
    std::string data_dir;
    app.add_option("--p", p, "prime characteristic (bigger = more vertices)");
    app.add_option("--ell", ell, "level for the batched neighbor pass");
    app.add_option("--data-dir", data_dir, "modular polynomial directory");
    CLI11_PARSE(app, argc, argv);

    ModPolyDB db(ModPolyDB::resolve_dir(data_dir.empty() ? std::nullopt
                                                         : std::optional<std::string>(data_dir)));
    FieldContext ctx = FieldContext::with_default_poly(p);
    db.reduced(2, p);
    db.reduced(ell, p);

    std::vector<Fp2> verts;
    double t_enum_serial = seconds([&] { verts = enumerate_supersingular(ctx, db, {false}); });
    std::vector<Fp2> verts_par;
    double t_enum_par = seconds([&] { verts_par = enumerate_supersingular(ctx, db, {true}); });
    if (verts != verts_par) {
        std::fprintf(stderr, "FAIL: parallel enumeration differs from serial\n");
        return 1;
    }

    const ReducedModPoly& rmp = db.reduced(ell, p);
    std::vector<RootMultiset> a, b;
    double t_batch_serial = seconds([&] { a = neighbor_batch_serial(verts, rmp, ctx, 1); });
    double t_batch_par = seconds([&] { b = neighbor_batch(verts, rmp, ctx, 1); });
    if (a != b) {
        std::fprintf(stderr, "FAIL: parallel batch differs from serial\n");
        return 1;
    }

    std::printf("p = %llu, %zu supersingular vertices\n", static_cast<unsigned long long>(p), verts.size());
    std::printf("%-28s %10.3fs\n", "enumerate (serial)", t_enum_serial);
    std::printf("%-28s %10.3fs  speedup %.2fx\n", "enumerate (openmp)", t_enum_par,
                t_enum_serial / t_enum_par);
    std::printf("%-28s %10.3fs\n", "neighbor batch (serial)", t_batch_serial);
    std::printf("%-28s %10.3fs  speedup %.2fx\n", "neighbor batch (openmp)", t_batch_par,
                t_batch_serial / t_batch_par);
    return 0;
}
