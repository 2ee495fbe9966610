#pragma once

#include "bfgp/core.hpp"

#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bfgp {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string &reason)
        : std::runtime_error("line " + std::to_string(line) + ": " + reason), line_(line),
          reason_(reason) {}

    int line() const { return line_; }
    const std::string &reason() const { return reason_; }

private:
    int line_;
    std::string reason_;
};

/*
  Line-oriented problem format:

    domain <name>
    var <name> bool | var <name> int <max>
    action <name> guard <atom>[,<atom>...] effects <var>:=<expr>[,...]
    atom <condition-atom>
    instance [note]
    init <var>=<value> ...
    goal <var>=<value> ...

  Sections appear in that order; `#` starts a comment. An empty guard or
  effect list is written `-`. Variables missing from `init` start at 0.
*/
ProblemSet parse_problem_set(std::istream &in);
ProblemSet parse_problem_set_text(std::string_view text);
ProblemSet load_problem_set(const std::string &path);

std::string serialize_problem_set(const ProblemSet &problems);

// Parses a single atom such as `c>0` or `i<j` against the domain's variables.
ConditionAtom parse_atom(const DomainSpec &domain, std::string_view text);

}  // namespace bfgp
