#pragma once

#include <cstdint>
#include <iosfwd>

#include "sumprod/field.hpp"
#include "sumprod/run_config.hpp"

namespace sumprod::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolation = 2;

/// Field-order cap: SUMPROD_ORDER_CAP when set, the library default otherwise.
std::uint64_t order_cap_from_env();

FieldPtr load_field(const std::string& spec);

/// Executes a validated config, writing the result to `out` (or the
/// config's output file). Returns kExitViolation when a verification
/// finds a broken invariant. Library errors propagate as sumprod::Error.
int run(const RunConfig& config, std::ostream& out);

}  // namespace sumprod::cli
