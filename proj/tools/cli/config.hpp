#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <biotsplit/params.hpp>
#include <biotsplit/steppers.hpp>

namespace biotsplit::cli {

enum class Check { energy, contraction, korn, rates };

const char* to_string(Check c);

struct RunConfig {
    Algorithm algorithm = Algorithm::coupled;
    std::optional<std::string> preset;
    ParameterSet params;
    int n0 = 16;
    int levels = 4;  ///< 0 skips the convergence study
    int iter = 1;
    std::optional<double> tol;
    std::vector<Check> checks;
    std::string out_csv;
    std::string out_json;
    std::string dump_matrix;
    /// Every option that was set (file or flag), as given.
    std::map<std::string, std::vector<std::string>> effective;
};

/// Bad flags, bad values or an unreadable config file. `what()` is meant
/// for the user.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised for an empty argument list or --help; carries the usage text.
class UsageRequested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// args excludes the program name. Flags override --config file values;
/// explicit nu / c0 / K override the preset. The result satisfies the
/// PhysParams invariants.
RunConfig parse_config(const std::vector<std::string>& args);

std::string usage();

}  // namespace biotsplit::cli
