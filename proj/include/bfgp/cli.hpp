#pragma once

namespace bfgp {

// Exit codes: 0 success or solved, 1 exhausted or invalid, 2 usage error.
int cli_main(int argc, char **argv);

}  // namespace bfgp
