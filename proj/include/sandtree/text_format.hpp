#pragma once

#include <string>
#include <string_view>

#include "sandtree/errors.hpp"
#include "sandtree/term.hpp"

namespace sandtree {

// Parses the textual DSL (file extension .sat):
//
//   term  := IDENT | ("OR" | "AND" | "SAND") "(" term ("," term)* ")"
//   IDENT := [A-Za-z_][A-Za-z0-9_-]*
//
// Whitespace between tokens is insignificant, the operator keywords are
// case-sensitive and rejected as action labels.  Throws ParseError carrying
// the offending byte span.
Term parse(std::string_view text);

// Canonical rendering: operator keyword, comma-separated children, no
// whitespace.  parse(serialize(t)) == t for every term.
std::string serialize(const Term& t);

// JSON form (file extension .json):
//   {"type":"ACTION","label":<ident>}
//   {"type":"OR"|"AND"|"SAND","children":[<term>...]}
// Action nodes carry "label" only, operator nodes "children" only (length
// >= 1).  from_json reports violations with a JSON pointer path.
std::string to_json(const Term& t);
Term from_json(std::string_view text);

// DOT digraph of the term tree, one node per term node labeled with the
// operator keyword or the action name.  Edges out of SAND nodes carry
// 1-based ordinal labels so the sequence order stays visible.
std::string term_to_dot(const Term& t);

}  // namespace sandtree
