#include "stratpath/population.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "stratpath/compensated_sum.hpp"
#include "stratpath/error.hpp"

namespace stratpath {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    s = s.substr(first, last - first + 1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
        s = s.substr(1, s.size() - 2);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view line, char delim) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(delim, start);
        if (pos == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return fields;
}

std::size_t find_column(const std::vector<std::string_view>& header, const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
        throw Error(ErrorKind::InputSchema, "input has no column named '" + name + "'");
    }
    return static_cast<std::size_t>(it - header.begin());
}

double parse_real(std::string_view field, std::size_t line_no, const std::string& column) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    if (!field.empty() && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (field.empty() || ec != std::errc{} || ptr != end) {
        throw Error(ErrorKind::Data, "line " + std::to_string(line_no) + ": cannot parse '" +
                                         std::string(field) + "' in column '" + column + "'");
    }
    if (!std::isfinite(value)) {
        throw Error(ErrorKind::Data, "line " + std::to_string(line_no) + ": non-finite value in column '" +
                                         column + "'");
    }
    return value;
}

}  // namespace

Population::Population(std::vector<Observation> observations) : obs_(std::move(observations)) {
    for (const auto& o : obs_) {
        if (!std::isfinite(o.x) || !std::isfinite(o.y)) {
            throw Error(ErrorKind::Data, "observation with non-finite x or y");
        }
    }
    std::stable_sort(obs_.begin(), obs_.end(),
                     [](const Observation& a, const Observation& b) { return a.x < b.x; });
}

Population load_population(std::istream& source, const LoadOptions& options) {
    std::string line;
    std::size_t line_no = 0;

    // header: first non-blank line
    std::vector<std::string_view> header;
    std::string header_line;
    while (std::getline(source, header_line)) {
        ++line_no;
        if (!trim(header_line).empty()) break;
    }
    if (trim(header_line).empty()) {
        throw Error(ErrorKind::EmptyPopulation, "input is empty");
    }
    // strip a UTF-8 byte order mark
    if (header_line.rfind("\xEF\xBB\xBF", 0) == 0) header_line.erase(0, 3);
    header = split(header_line, options.delimiter);

    const std::size_t x_idx = find_column(header, options.x_column);
    std::optional<std::size_t> y_idx;
    if (options.y_column) y_idx = find_column(header, *options.y_column);
    const std::size_t needed = std::max(x_idx, y_idx.value_or(0)) + 1;

    std::vector<Observation> obs;
    while (std::getline(source, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split(line, options.delimiter);
        if (fields.size() < needed) {
            throw Error(ErrorKind::Data, "line " + std::to_string(line_no) + ": expected at least " +
                                             std::to_string(needed) + " fields, found " +
                                             std::to_string(fields.size()));
        }
        const double x = parse_real(fields[x_idx], line_no, options.x_column);
        const double y = y_idx ? parse_real(fields[*y_idx], line_no, *options.y_column) : x;
        obs.push_back({x, y});
    }
    if (obs.empty()) {
        throw Error(ErrorKind::EmptyPopulation, "input has a header but no data rows");
    }
    return Population(std::move(obs));
}

Population load_population_file(const std::string& path, const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open input file '" + path + "'");
    }
    return load_population(in, options);
}

FrequencyTable build_frequency_table(const Population& pop) {
    if (pop.empty()) {
        throw Error(ErrorKind::EmptyPopulation, "cannot tabulate an empty population");
    }
    const auto& obs = pop.observations();
    FrequencyTable ft;
    ft.N = obs.size();

    std::size_t begin = 0;
    while (begin < obs.size()) {
        std::size_t end = begin + 1;
        while (end < obs.size() && obs[end].x == obs[begin].x) ++end;

        CompensatedSum<double> sum;
        CompensatedSum<double> sumsq;
        double lo = obs[begin].y;
        double hi = obs[begin].y;
        for (std::size_t i = begin; i < end; ++i) {
            const double y = obs[i].y;
            sum += y;
            sumsq += y * y;
            lo = std::min(lo, y);
            hi = std::max(hi, y);
        }
        const auto n = end - begin;
        const double mean = sum.value() / static_cast<double>(n);
        CompensatedSum<double> m2;
        if (lo != hi) {
            for (std::size_t i = begin; i < end; ++i) {
                const double d = obs[i].y - mean;
                m2 += d * d;
            }
        }

        ft.q.push_back(obs[begin].x);
        ft.count.push_back(n);
        ft.y_sum.push_back(sum.value());
        ft.y_sumsq.push_back(sumsq.value());
        ft.y_m2.push_back(m2.value());
        ft.y_min.push_back(lo);
        ft.y_max.push_back(hi);
        begin = end;
    }
    return ft;
}

}  // namespace stratpath
