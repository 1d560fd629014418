#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace stratpath {

/// One unit of the sampling frame: the size variable `x`, known for every
/// unit, and the study variable `y` whose total is to be estimated.
struct Observation {
    double x = 0.0;
    double y = 0.0;
};

/// A sampling frame sorted ascending by `x`. Construction validates
/// finiteness and sorts; the object is immutable afterwards.
class Population {
public:
    explicit Population(std::vector<Observation> observations);

    const std::vector<Observation>& observations() const noexcept { return obs_; }
    std::size_t size() const noexcept { return obs_.size(); }
    bool empty() const noexcept { return obs_.empty(); }

private:
    std::vector<Observation> obs_;
};

struct LoadOptions {
    std::string x_column = "x";
    std::optional<std::string> y_column;
    char delimiter = ',';
};

/// Reads a delimited text table with a header row. When no y column is
/// named, y is set equal to x for every row.
///
/// Throws Error(InputSchema) for a missing column, Error(Data) naming the
/// line number of an unparsable or non-finite value, and
/// Error(EmptyPopulation) when there are no data rows.
Population load_population(std::istream& source, const LoadOptions& options);
Population load_population_file(const std::string& path, const LoadOptions& options);

/// Distinct sorted x values with per-group aggregates of y.
///
/// Groups are formed by exact equality of x. Besides the plain sums, each
/// group keeps its within-group sum of squared deviations (`y_m2`,
/// computed two-pass from the raw values) and the y range, which lets
/// segment variances be evaluated without cancellation and lets constant
/// segments be recognised exactly.
struct FrequencyTable {
    std::vector<double> q;
    std::vector<std::size_t> count;
    std::vector<double> y_sum;
    std::vector<double> y_sumsq;
    std::vector<double> y_m2;
    std::vector<double> y_min;
    std::vector<double> y_max;
    std::size_t N = 0;

    std::size_t K() const noexcept { return q.size(); }
};

FrequencyTable build_frequency_table(const Population& pop);

}  // namespace stratpath
