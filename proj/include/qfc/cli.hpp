#ifndef QFC_CLI_HPP
#define QFC_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace qfc::cli {

// Entry point behind the qfc binary. Exit codes: 0 success / true verdict,
// 1 false verdict (losing state, failed verification), 2 usage or resource
// errors. Diagnostics go to err, data to out (or to --out files).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qfc::cli

#endif
