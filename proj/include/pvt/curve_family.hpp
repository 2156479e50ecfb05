#ifndef PVT_CURVE_FAMILY_HPP
#define PVT_CURVE_FAMILY_HPP

#include "pvt/diode.hpp"

#include <vector>

namespace pvt {

/// One row of a long-format curve table: the (T_c, G) pair it belongs to
/// plus the operating point.
struct CurvePoint {
    double T_c;
    double G;
    double V;
    double I;
    double P;
};

struct MppPoint {
    double T_c;
    double G;
    OperatingPoint mpp;
};

/// I-V/P-V curves for every (T_c, G) pair in the cross product, long format,
/// ordered by (temperature index, irradiance index, voltage index).
///
/// The pairs are independent, so the kernel runs the grid with OpenMP;
/// the _serial twin is the reference the tests compare against bit for bit.
std::vector<CurvePoint> curve_family(const ReferenceParams& ref, const DatasheetSpec& ds,
                                     const std::vector<double>& temps_C,
                                     const std::vector<double>& irradiances,
                                     int n_points,
                                     CircuitVariant variant = CircuitVariant::series_shunt);
std::vector<CurvePoint> curve_family_serial(const ReferenceParams& ref, const DatasheetSpec& ds,
                                            const std::vector<double>& temps_C,
                                            const std::vector<double>& irradiances,
                                            int n_points,
                                            CircuitVariant variant = CircuitVariant::series_shunt);

/// Maximum power point over the same grid.
std::vector<MppPoint> mpp_grid(const ReferenceParams& ref, const DatasheetSpec& ds,
                               const std::vector<double>& temps_C,
                               const std::vector<double>& irradiances,
                               CircuitVariant variant = CircuitVariant::series_shunt);
std::vector<MppPoint> mpp_grid_serial(const ReferenceParams& ref, const DatasheetSpec& ds,
                                      const std::vector<double>& temps_C,
                                      const std::vector<double>& irradiances,
                                      CircuitVariant variant = CircuitVariant::series_shunt);

} // namespace pvt

#endif
