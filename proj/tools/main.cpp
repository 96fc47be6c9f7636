#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  try {
    const purelab::cli::RunConfig config = purelab::cli::parse_args(argc, argv);
    return purelab::cli::execute(config, std::cout, std::cerr);
  } catch (const purelab::cli::HelpRequested& help) {
    std::cout << help.text;
    return 0;
  } catch (const purelab::cli::UsageError& usage) {
    std::cerr << usage.message << "\n";
    return usage.exit_status;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
}
