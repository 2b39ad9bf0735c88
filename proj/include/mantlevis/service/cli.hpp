#pragma once

namespace mantlevis::service {

/// Subcommands generate, preprocess, render and serve. Failures print one
/// "mantlevis: error: ..." line to stderr and return nonzero.
int run_cli(int argc, char** argv);

}  // namespace mantlevis::service
