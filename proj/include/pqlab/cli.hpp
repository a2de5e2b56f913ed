#pragma once

namespace pqlab::cli {

/// Parses argv and runs one subcommand. Exit codes: 0 success, 1 domain
/// error, 2 usage error.
int run(int argc, char** argv);

}  // namespace pqlab::cli
