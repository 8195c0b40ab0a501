#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace autgrp {

// Runs the command line on args (program name excluded). Results go to out,
// failures to err as {"error": kind, "message": text}. Returns the exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace autgrp
