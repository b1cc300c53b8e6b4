#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "biotsplit/errors.hpp"
#include "biotsplit/params.hpp"
#include "biotsplit/steppers.hpp"

namespace biotsplit {

inline constexpr std::array<const char*, 6> kErrorColumns{"L2_u", "H1_u", "L2_xi", "H1_xi", "L2_p", "H1_p"};

struct StudyConfig {
    Algorithm algorithm = Algorithm::coupled;
    ParameterSet params;
    int n0 = 16;      ///< cells per side on the coarsest level
    int levels = 4;   ///< number of meshes in the refinement chain
    IterationControl control;
};

struct LevelResult {
    int level = 0;
    int inv_h = 0;
    Index dofs = 0;  ///< u + xi + p unknowns
    FieldErrors errors;
    SolveStats stats;
    double seconds = 0.0;
};

struct ErrorReport {
    std::vector<LevelResult> levels;

    /// log2(e_{k-1} / e_k) for column c; empty on the first level.
    [[nodiscard]] std::optional<double> rate(std::size_t level, std::size_t column) const;
    [[nodiscard]] SolveStats stats() const;
};

/// Marches the manufactured problem from its interpolated initial state to
/// T on one mesh and evaluates the errors there.
LevelResult run_level(const StudyConfig& config, std::shared_ptr<const TriMesh> mesh);

/// Refinement chain n0, 2 n0, ... with one LevelResult per mesh. Solver
/// failures are rethrown as std::runtime_error naming the level.
ErrorReport run_study(const StudyConfig& config, const std::function<void(const LevelResult&)>& progress = {});

std::string format_error(double value);  ///< "1.063e-03"
std::string format_rate(double value);   ///< "2.09"

/// Columns level, inv_h, err_L2_u, rate_L2_u, ..., err_H1_p, rate_H1_p.
void write_csv(std::ostream& out, const ErrorReport& report);

}  // namespace biotsplit
