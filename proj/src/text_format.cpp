#include "sandtree/text_format.hpp"

#include <cctype>
#include <sstream>

#include <json.hpp>

namespace sandtree {

namespace {

using nlohmann::json;

struct Token {
  enum Type { Ident, LParen, RParen, Comma, End } type;
  std::string_view text;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view input) : input_(input) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < input_.size() &&
           std::isspace(static_cast<unsigned char>(input_[pos_]))) {
      ++pos_;
    }
    std::size_t start = pos_;
    if (pos_ >= input_.size()) {
      current_ = {Token::End, {}, {start, start}};
      return;
    }
    char c = input_[pos_];
    if (c == '(' || c == ')' || c == ',') {
      ++pos_;
      Token::Type type = c == '(' ? Token::LParen
                       : c == ')' ? Token::RParen
                                  : Token::Comma;
      current_ = {type, input_.substr(start, 1), {start, pos_}};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      ++pos_;
      while (pos_ < input_.size()) {
        char n = input_[pos_];
        if (std::isalnum(static_cast<unsigned char>(n)) || n == '_' || n == '-') {
          ++pos_;
        } else {
          break;
        }
      }
      current_ = {Token::Ident, input_.substr(start, pos_ - start), {start, pos_}};
      return;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'",
                     {start, start + 1});
  }

  std::string_view input_;
  std::size_t pos_ = 0;
  Token current_{Token::End, {}, {0, 0}};
};

bool is_operator_keyword(std::string_view s) {
  return s == "OR" || s == "AND" || s == "SAND";
}

Term parse_term(Lexer& lex) {
  Token t = lex.take();
  if (t.type != Token::Ident) {
    throw ParseError("expected a term (action label or operator)", t.span);
  }
  if (!is_operator_keyword(t.text)) {
    return Term::action(std::string(t.text));
  }
  TermKind kind = t.text == "OR"    ? TermKind::Or
                : t.text == "AND"   ? TermKind::And
                                    : TermKind::Sand;
  if (lex.peek().type != Token::LParen) {
    // "OR" alone would otherwise read as an action label.
    throw ParseError("expected '(' after operator keyword", lex.peek().span);
  }
  lex.take();
  std::vector<Term> children;
  children.push_back(parse_term(lex));
  while (lex.peek().type == Token::Comma) {
    lex.take();
    children.push_back(parse_term(lex));
  }
  Token close = lex.take();
  if (close.type != Token::RParen) {
    throw ParseError("expected ',' or ')'", close.span);
  }
  return Term::make(kind, std::move(children));
}

}  // namespace

Term parse(std::string_view text) {
  Lexer lex(text);
  Term t = parse_term(lex);
  if (lex.peek().type != Token::End) {
    throw ParseError("trailing input after term", lex.peek().span);
  }
  return t;
}

std::string serialize(const Term& t) {
  if (t.is_action()) return t.label();
  std::string out(kind_name(t.kind()));
  out += '(';
  bool first = true;
  for (const Term& c : t.children()) {
    if (!first) out += ',';
    first = false;
    out += serialize(c);
  }
  out += ')';
  return out;
}

namespace {

json term_to_json_value(const Term& t) {
  json v;
  v["type"] = std::string(kind_name(t.kind()));
  if (t.is_action()) {
    v["label"] = t.label();
  } else {
    json kids = json::array();
    for (const Term& c : t.children()) kids.push_back(term_to_json_value(c));
    v["children"] = std::move(kids);
  }
  return v;
}

Term term_from_json_value(const json& v, const std::string& path) {
  if (!v.is_object()) {
    throw JsonSchemaError("expected an object", path);
  }
  auto type_it = v.find("type");
  if (type_it == v.end() || !type_it->is_string()) {
    throw JsonSchemaError("missing or non-string \"type\"", path + "/type");
  }
  std::string type = type_it->get<std::string>();
  if (type == "ACTION") {
    auto label_it = v.find("label");
    if (label_it == v.end() || !label_it->is_string()) {
      throw JsonSchemaError("ACTION needs a string \"label\"", path + "/label");
    }
    if (v.contains("children")) {
      throw JsonSchemaError("ACTION must not carry \"children\"",
                            path + "/children");
    }
    std::string label = label_it->get<std::string>();
    if (!is_valid_action_label(label)) {
      throw JsonSchemaError("invalid action label '" + label + "'",
                            path + "/label");
    }
    return Term::action(std::move(label));
  }
  if (type != "OR" && type != "AND" && type != "SAND") {
    throw JsonSchemaError("unknown node type '" + type + "'", path + "/type");
  }
  if (v.contains("label")) {
    throw JsonSchemaError("operator node must not carry \"label\"",
                          path + "/label");
  }
  auto kids_it = v.find("children");
  if (kids_it == v.end() || !kids_it->is_array()) {
    throw JsonSchemaError("operator node needs a \"children\" array",
                          path + "/children");
  }
  if (kids_it->empty()) {
    throw JsonSchemaError("\"children\" must not be empty", path + "/children");
  }
  TermKind kind = type == "OR"  ? TermKind::Or
                : type == "AND" ? TermKind::And
                                : TermKind::Sand;
  std::vector<Term> children;
  children.reserve(kids_it->size());
  for (std::size_t i = 0; i < kids_it->size(); ++i) {
    children.push_back(term_from_json_value(
        (*kids_it)[i], path + "/children/" + std::to_string(i)));
  }
  return Term::make(kind, std::move(children));
}

}  // namespace

std::string to_json(const Term& t) { return term_to_json_value(t).dump(); }

Term from_json(std::string_view text) {
  json v = json::parse(text, nullptr, false);
  if (v.is_discarded()) {
    throw JsonSchemaError("input is not valid JSON", "");
  }
  return term_from_json_value(v, "");
}

namespace {

void dot_node(const Term& t, std::ostringstream& out, int& next_id, int my_id) {
  if (t.is_action()) {
    out << "  n" << my_id << " [label=\"" << t.label() << "\"];\n";
    return;
  }
  out << "  n" << my_id << " [label=\"" << kind_name(t.kind())
      << "\" shape=box];\n";
  std::size_t ordinal = 1;
  for (const Term& c : t.children()) {
    int child_id = next_id++;
    dot_node(c, out, next_id, child_id);
    out << "  n" << my_id << " -> n" << child_id;
    if (t.kind() == TermKind::Sand) {
      out << " [label=\"" << ordinal << "\"]";
    }
    out << ";\n";
    ++ordinal;
  }
}

}  // namespace

std::string term_to_dot(const Term& t) {
  std::ostringstream out;
  out << "digraph term {\n";
  int next_id = 1;
  dot_node(t, out, next_id, 0);
  out << "}\n";
  return out.str();
}

}  // namespace sandtree
