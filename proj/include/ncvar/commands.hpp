#pragma once

#include <optional>

#include "ncvar/io.hpp"

namespace ncvar
{

struct CommandOverrides
{
    std::optional<int> degree;  ///< replaces the problem's d
    std::optional<double> tol;  ///< replaces tol_pure and tol_cnc
};

/// Each command returns a report with sorted keys; "all_pass" is true iff every
/// entry of "residuals" passes and no stage raised an error.
Json cmd_analyze(const Problem& problem, const CommandOverrides& ov = {});
Json cmd_charfn(const Problem& problem, const CommandOverrides& ov = {});
Json cmd_model(const Problem& problem, const CommandOverrides& ov = {});
Json cmd_equiv(const Problem& a, const Problem& b, const std::optional<Matrix>& u, const CommandOverrides& ov = {});

/// Copy of the report without the "timings" field.
Json strip_timings(const Json& report);

} // namespace ncvar
