#include "chidef/def_complex.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>

using namespace chidef;

int main(int argc, char** argv) {
    unsigned r = argc > 1 ? unsigned(atoi(argv[1])) : 1;
    unsigned Dt = argc > 2 ? unsigned(atoi(argv[2])) : 3;
    unsigned At = argc > 3 ? unsigned(atoi(argv[3])) : 3;
    unsigned nmax = argc > 4 ? unsigned(atoi(argv[4])) : 3;
    int t0max = argc > 5 ? atoi(argv[5]) : 2;
    unsigned gap = argc > 6 ? unsigned(atoi(argv[6])) : 1;
    unsigned L = argc > 7 ? unsigned(atoi(argv[7])) : 2;
    unsigned P = argc > 8 ? unsigned(atoi(argv[8])) : 2;

    int wmin = -2, wmax = 2;

    unsigned Dg = Dt + gap, Ag = At + gap;
    unsigned max_deg = unsigned(std::max(int(2 * Dg), wmax + int(Dg)));
    unsigned max_wt = unsigned(std::max(int(2 * Ag + P + 2), t0max + int(nmax) + int(Ag + P) + 1));
    auto t0c = std::chrono::steady_clock::now();
    auto space = std::make_shared<SKSpace>(r, max_deg, max_wt);
    SKModel model(space);
    auto t1c = std::chrono::steady_clock::now();
    auto b = model.product_cochain(Dg, Ag, P + gap + 1);
    auto t2c = std::chrono::steady_clock::now();
    printf("model: %zu monomials, %zu generators (%.1fs), b table %zu cells (%.1fs)\n",
           space->monomials().size(), model.gen_count(),
           std::chrono::duration<double>(t1c - t0c).count(), b.table().size(),
           std::chrono::duration<double>(t2c - t1c).count());

    for (int w = wmin; w <= wmax; ++w) {
        for (int t0 = -1; t0 <= t0max; ++t0) {
            for (std::size_t n = 1; n <= nmax; ++n) {
                int cwt = t0 + int(n) + 1;
                ComplexWindow small{Dt, At, L, P, cwt};
                auto ta = std::chrono::steady_clock::now();
                CohomologyEntry e = cohomology_at(model, b, n, w, small);
                auto tb = std::chrono::steady_clock::now();
                std::size_t oracle =
                    n - 1 <= P ? koszul_dimension(r, n, w, t0, int(L), -1) : 0;
                bool match = e.dim_h >= 0 && std::size_t(e.dim_h) == oracle;
                if (e.dim_h == 0 && oracle == 0 && e.clipped_out == 0 && e.clipped_in == 0)
                    continue;
                printf("w=%+d t0=%+d n=%zu H=%ld oracle=%zu dim=%zu out=%zu in=%zu clip=%zu/%zu"
                       "  (%.1fs)%s\n",
                       w, t0, n, e.dim_h, oracle, e.dim_space, e.rank_out, e.rank_in,
                       e.clipped_out, e.clipped_in,
                       std::chrono::duration<double>(tb - ta).count(),
                       match ? "" : "  <-- MISMATCH");
                fflush(stdout);
            }
        }
    }
    return 0;
}
