#include "pvt/curve_family.hpp"
#include "pvt/errors.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pvt {

namespace {

// Each (T_c, G) pair writes a disjoint slot, so the parallel and serial
// versions produce bit-identical tables in the same order. Exceptions must
// not escape an OpenMP region; the first failure is re-thrown afterwards
// with the offending pair named.
struct FirstFailure {
    bool failed = false;
    std::string message;

    void capture(double T_c, double G, const std::exception& e) {
#pragma omp critical(pvt_kernel_failure)
        if (!failed) {
            failed = true;
            message = "pair (T_c=" + std::to_string(T_c) + ", G=" + std::to_string(G) +
                      "): " + e.what();
        }
    }
    void rethrow_if_failed() const {
        if (failed)
            throw solver_error(message);
    }
};

template <bool Parallel>
std::vector<CurvePoint> curve_family_impl(const ReferenceParams& ref, const DatasheetSpec& ds,
                                          const std::vector<double>& temps,
                                          const std::vector<double>& irradiances, int n_points,
                                          CircuitVariant variant) {
    if (temps.empty() || irradiances.empty())
        throw std::invalid_argument("curve_family: temperature and irradiance lists must be non-empty");
    if (n_points < 2)
        throw std::invalid_argument("curve_family: n_points must be >= 2");

    const std::ptrdiff_t n_pairs =
        static_cast<std::ptrdiff_t>(temps.size() * irradiances.size());
    std::vector<CurvePoint> table(static_cast<size_t>(n_pairs) * static_cast<size_t>(n_points));
    FirstFailure failure;

#pragma omp parallel for schedule(static) if (Parallel)
    for (std::ptrdiff_t pair = 0; pair < n_pairs; ++pair) {
        const size_t ti = static_cast<size_t>(pair) / irradiances.size();
        const size_t gi = static_cast<size_t>(pair) % irradiances.size();
        const double T_c = temps[ti];
        const double G = irradiances[gi];
        try {
            const DiodeModel model = build_model(ref, ds, G, T_c, variant);
            const auto curve = iv_curve(model, n_points);
            CurvePoint* slot = table.data() + static_cast<size_t>(pair) * curve.size();
            for (size_t k = 0; k < curve.size(); ++k)
                slot[k] = {T_c, G, curve[k].V, curve[k].I, curve[k].P};
        } catch (const std::exception& e) {
            failure.capture(T_c, G, e);
        }
    }
    failure.rethrow_if_failed();
    return table;
}

template <bool Parallel>
std::vector<MppPoint> mpp_grid_impl(const ReferenceParams& ref, const DatasheetSpec& ds,
                                    const std::vector<double>& temps,
                                    const std::vector<double>& irradiances,
                                    CircuitVariant variant) {
    if (temps.empty() || irradiances.empty())
        throw std::invalid_argument("mpp_grid: temperature and irradiance lists must be non-empty");

    const std::ptrdiff_t n_pairs =
        static_cast<std::ptrdiff_t>(temps.size() * irradiances.size());
    std::vector<MppPoint> grid(static_cast<size_t>(n_pairs));
    FirstFailure failure;

#pragma omp parallel for schedule(static) if (Parallel)
    for (std::ptrdiff_t pair = 0; pair < n_pairs; ++pair) {
        const size_t ti = static_cast<size_t>(pair) / irradiances.size();
        const size_t gi = static_cast<size_t>(pair) % irradiances.size();
        try {
            const DiodeModel model = build_model(ref, ds, irradiances[gi], temps[ti], variant);
            grid[static_cast<size_t>(pair)] = {temps[ti], irradiances[gi], max_power_point(model)};
        } catch (const std::exception& e) {
            failure.capture(temps[ti], irradiances[gi], e);
        }
    }
    failure.rethrow_if_failed();
    return grid;
}

} // namespace

std::vector<CurvePoint> curve_family(const ReferenceParams& ref, const DatasheetSpec& ds,
                                     const std::vector<double>& temps_C,
                                     const std::vector<double>& irradiances, int n_points,
                                     CircuitVariant variant) {
    return curve_family_impl<true>(ref, ds, temps_C, irradiances, n_points, variant);
}

std::vector<CurvePoint> curve_family_serial(const ReferenceParams& ref, const DatasheetSpec& ds,
                                            const std::vector<double>& temps_C,
                                            const std::vector<double>& irradiances, int n_points,
                                            CircuitVariant variant) {
    return curve_family_impl<false>(ref, ds, temps_C, irradiances, n_points, variant);
}

std::vector<MppPoint> mpp_grid(const ReferenceParams& ref, const DatasheetSpec& ds,
                               const std::vector<double>& temps_C,
                               const std::vector<double>& irradiances, CircuitVariant variant) {
    return mpp_grid_impl<true>(ref, ds, temps_C, irradiances, variant);
}

std::vector<MppPoint> mpp_grid_serial(const ReferenceParams& ref, const DatasheetSpec& ds,
                                      const std::vector<double>& temps_C,
                                      const std::vector<double>& irradiances,
                                      CircuitVariant variant) {
    return mpp_grid_impl<false>(ref, ds, temps_C, irradiances, variant);
}

} // namespace pvt
