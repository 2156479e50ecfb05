#ifndef PVT_WEATHER_HPP
#define PVT_WEATHER_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace pvt {

struct WeatherSample {
    double t;   // seconds since series start-of-day reference
    double G;   // global irradiance on the collector plane, W/m^2
    double T_a; // ambient temperature, degC
};

/// Timestamped irradiance + ambient series driving a simulation.
/// Invariants: strictly increasing t, G >= 0, at least two samples.
struct WeatherSeries {
    std::vector<WeatherSample> samples;

    double span() const { return samples.back().t - samples.front().t; }
    std::size_t size() const { return samples.size(); }
};

/// Reads a CSV with header `time,irradiance,ambient`. Time cells are either
/// integer seconds or wall-clock HH:MM. Rejects non-monotone or duplicate
/// timestamps, negative irradiance, and series shorter than two rows.
WeatherSeries load_weather_csv(std::istream& source);
WeatherSeries load_weather_csv_file(const std::string& path);

void validate(const WeatherSeries& series);

/// Uniform grid from the first to the last timestamp at `step` seconds,
/// G and T_a linearly interpolated. Grid points that coincide with an
/// original timestamp reproduce that sample exactly.
WeatherSeries resample_weather(const WeatherSeries& series, double step);

} // namespace pvt

#endif
