#include "pvt/weather.hpp"
#include "pvt/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pvt {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    size_t b = s.find_last_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
        cells.push_back(trim(cell));
    return cells;
}

// Accepts plain seconds ("28800", "60.0") or wall clock "HH:MM".
double parse_time_cell(const std::string& cell, size_t row) {
    auto colon = cell.find(':');
    if (colon != std::string::npos) {
        try {
            int hh = std::stoi(cell.substr(0, colon));
            int mm = std::stoi(cell.substr(colon + 1));
            if (hh < 0 || mm < 0 || mm > 59)
                throw std::invalid_argument("range");
            return hh * 3600.0 + mm * 60.0;
        } catch (const std::exception&) {
            throw parse_error("weather: row " + std::to_string(row) + ": bad HH:MM time \"" +
                              cell + "\"");
        }
    }
    try {
        size_t used = 0;
        double t = std::stod(cell, &used);
        if (used != cell.size())
            throw std::invalid_argument("trailing");
        return t;
    } catch (const std::exception&) {
        throw parse_error("weather: row " + std::to_string(row) + ": bad time \"" + cell + "\"");
    }
}

double parse_number_cell(const std::string& cell, const char* what, size_t row) {
    try {
        size_t used = 0;
        double v = std::stod(cell, &used);
        if (used != cell.size())
            throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw parse_error("weather: row " + std::to_string(row) + ": bad " + what + " \"" + cell +
                          "\"");
    }
}

} // namespace

void validate(const WeatherSeries& series) {
    if (series.samples.size() < 2)
        throw validation_error("WeatherSeries: needs at least 2 samples, got " +
                               std::to_string(series.samples.size()));
    for (size_t i = 0; i < series.samples.size(); ++i) {
        const auto& s = series.samples[i];
        if (s.G < 0.0)
            throw validation_error("WeatherSeries: negative irradiance " + std::to_string(s.G) +
                                   " at t=" + std::to_string(s.t));
        if (i > 0 && !(s.t > series.samples[i - 1].t))
            throw validation_error("WeatherSeries: timestamps not strictly increasing at t=" +
                                   std::to_string(s.t));
    }
}

WeatherSeries load_weather_csv(std::istream& source) {
    std::string line;
    if (!std::getline(source, line))
        throw parse_error("weather: empty document");
    auto header = split_csv_line(line);
    if (header.size() < 3 || header[0] != "time" || header[1] != "irradiance" ||
        header[2] != "ambient")
        throw parse_error("weather: expected header `time,irradiance,ambient`, got \"" +
                          trim(line) + "\"");

    WeatherSeries series;
    size_t row = 1;
    while (std::getline(source, line)) {
        ++row;
        if (trim(line).empty())
            continue;
        auto cells = split_csv_line(line);
        if (cells.size() < 3)
            throw parse_error("weather: row " + std::to_string(row) + ": expected 3 cells, got " +
                              std::to_string(cells.size()));
        WeatherSample s;
        s.t = parse_time_cell(cells[0], row);
        s.G = parse_number_cell(cells[1], "irradiance", row);
        s.T_a = parse_number_cell(cells[2], "ambient", row);
        series.samples.push_back(s);
    }
    validate(series);
    return series;
}

WeatherSeries load_weather_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw parse_error("weather: cannot open \"" + path + "\"");
    return load_weather_csv(in);
}

WeatherSeries resample_weather(const WeatherSeries& series, double step) {
    if (!(step > 0.0))
        throw std::invalid_argument("resample_weather: step must be > 0, got " +
                                    std::to_string(step));
    validate(series);
    if (step > series.span())
        throw std::invalid_argument("resample_weather: step " + std::to_string(step) +
                                    " exceeds the series span " + std::to_string(series.span()));

    const auto& src = series.samples;
    const double t0 = src.front().t;
    const auto n_grid = static_cast<size_t>(std::floor(series.span() / step)) + 1;

    WeatherSeries out;
    out.samples.reserve(n_grid);
    size_t seg = 0; // src[seg] <= t < src[seg+1]
    for (size_t i = 0; i < n_grid; ++i) {
        const double t = t0 + static_cast<double>(i) * step;
        while (seg + 2 < src.size() && src[seg + 1].t <= t)
            ++seg;
        const auto& a = src[seg];
        const auto& b = src[seg + 1];
        WeatherSample s;
        s.t = t;
        if (t <= a.t) {
            s.G = a.G;
            s.T_a = a.T_a;
        } else if (t >= b.t) {
            s.G = b.G;
            s.T_a = b.T_a;
        } else {
            const double w = (t - a.t) / (b.t - a.t);
            s.G = a.G + w * (b.G - a.G);
            s.T_a = a.T_a + w * (b.T_a - a.T_a);
        }
        if (s.G < 0.0)
            s.G = 0.0;
        out.samples.push_back(s);
    }
    return out;
}

} // namespace pvt
