// Compares the OpenMP curve/MPP kernels against their serial references.
// Build and run: ./bench/pvt_bench [pairs_per_axis] [points_per_curve]

#include "pvt/curve_family.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using clock_type = std::chrono::steady_clock;

template <typename F>
double time_ms(F&& fn) {
    const auto t0 = clock_type::now();
    fn();
    const auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    const int axis = argc > 1 ? std::atoi(argv[1]) : 24;
    const int points = argc > 2 ? std::atoi(argv[2]) : 120;

    pvt::DatasheetSpec ds{};
    ds.I_sc_ref = 3.8;
    ds.V_oc_ref = 21.1;
    ds.I_mp_ref = 3.5;
    ds.V_mp_ref = 17.1;
    ds.K_I = 0.00247;
    ds.K_V = -0.080;
    ds.NOCT = 49.0;
    ds.T_ref = 25.0;
    ds.G_ref = 1000.0;
    ds.R_sh_fixed = 300.0;
    ds.N_s = 36;
    const auto ref = pvt::extract_reference_params(ds);

    std::vector<double> temps, irr;
    for (int i = 0; i < axis; ++i) {
        temps.push_back(5.0 + 75.0 * i / (axis - 1));
        irr.push_back(150.0 + 950.0 * i / (axis - 1));
    }

#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP: compiled out (serial twin only)\n");
#endif
    std::printf("grid %dx%d, %d points per curve\n\n", axis, axis, points);

    // warm-up keeps the first-touch cost out of the comparison
    (void)pvt::curve_family_serial(ref, ds, {25.0}, {1000.0}, points);

    const double t_curve_ser =
        time_ms([&] { (void)pvt::curve_family_serial(ref, ds, temps, irr, points); });
    const double t_curve_par = time_ms([&] { (void)pvt::curve_family(ref, ds, temps, irr, points); });
    std::printf("curve_family  serial %8.1f ms   parallel %8.1f ms   speedup %.2fx\n", t_curve_ser,
                t_curve_par, t_curve_ser / t_curve_par);

    const double t_mpp_ser = time_ms([&] { (void)pvt::mpp_grid_serial(ref, ds, temps, irr); });
    const double t_mpp_par = time_ms([&] { (void)pvt::mpp_grid(ref, ds, temps, irr); });
    std::printf("mpp_grid      serial %8.1f ms   parallel %8.1f ms   speedup %.2fx\n", t_mpp_ser,
                t_mpp_par, t_mpp_ser / t_mpp_par);
    return 0;
}
