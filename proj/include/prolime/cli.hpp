#ifndef PROLIME_CLI_HPP
#define PROLIME_CLI_HPP

#include "prolime/samplers.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace prolime::cli {

/// Usage or configuration problem; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SamplerChoice { Standard, ProcessAware };

struct RunConfig {
    std::uint64_t seed = 42;
    // Defaults to seed.
    std::optional<std::uint64_t> model_seed;
    std::size_t n = 10000;
    std::size_t trials = 100;
    std::vector<std::size_t> sizes{1000, 5000};
    std::size_t neighborhood_size = 5000;
    SamplerChoice sampler = SamplerChoice::Standard;
    CenterMode center = CenterMode::SampleCentered;
    NoiseMode noise = NoiseMode::Gaussian;
    double kernel_width = 0.0; // 0.75 * sqrt(2) once resolved
    double ridge = 1.0;
    double rho = -0.9;
    double density_threshold = 0.01;
    std::size_t explained_class = 1;
    bool standardize = false;
    bool constant_model = false;
    double credit = 0.0;
    double risk = 0.0;
    std::string plot_kind = "data";
    std::string input;
    std::size_t resolution = 200;
    std::size_t threads = 1;
    std::string out;
    std::string json_out;
};

using ConfigEntries = std::map<std::string, std::string>;

/// Flat `key = value` lines; blank lines and `#` comments are skipped.
/// Keys are normalised to lower case with '-' separators.
ConfigEntries parse_config(std::istream& in);

/// Overwrites the fields named in entries, validating every value.
void apply_config(RunConfig& config, const ConfigEntries& entries);

/// Runs the command line. Exit codes: 0 success, 1 runtime failure,
/// 2 usage or configuration error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace prolime::cli

#endif
