#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>

#include "saalab/estimators.hpp"
#include "saalab/schedule.hpp"

namespace saalab::cli {

inline constexpr std::string_view kCsvHeader =
    "n,t_n,kind,estimate,abs_estimate,half_width,samples,seed";

class CsvSchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// %.17g, so every double round-trips exactly.
std::string format_real(double x);

// Header plus one row per checkpoint of each series, in order.
void write_series_csv(std::ostream& out, std::span<const ErrorSeries> series,
                      const Schedule& schedule);

// Reads the rows of one kind (the first kind in the file when unset).
ErrorSeries read_series_csv(std::istream& in, std::optional<ErrorKind> kind = std::nullopt);

}  // namespace saalab::cli
