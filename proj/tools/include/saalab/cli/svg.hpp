#pragma once

#include <optional>
#include <ostream>

#include "saalab/estimators.hpp"

namespace saalab::cli {

// Static log-log chart of |estimate| against n, with the fitted line when
// one is given.
void write_loglog_svg(std::ostream& out, const ErrorSeries& series,
                      const std::optional<RateFit>& fit);

}  // namespace saalab::cli
