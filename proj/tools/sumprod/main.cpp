#include <iostream>

#include "sumprod/commands.hpp"
#include "sumprod/error.hpp"
#include "sumprod/run_config.hpp"

int main(int argc, char** argv) {
  using namespace sumprod;
  try {
    const auto parsed = cli::parse_args(argc, argv);
    if (!parsed.config) {
      (parsed.exit_code == 0 ? std::cout : std::cerr) << parsed.message;
      return parsed.exit_code;
    }
    if (parsed.dump_config) {
      const nlohmann::ordered_json j = *parsed.config;
      std::cout << j.dump(2) << "\n";
      return cli::kExitOk;
    }
    return cli::run(*parsed.config, std::cout);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitError;
  }
}
