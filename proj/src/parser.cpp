#include "qsv/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "qsv/errors.hpp"

namespace qsv {

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, tensor, end };

struct Token {
  Tok kind;
  std::string text;
  int column;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

std::vector<Token> lex(std::string_view s, int line, int col0, bool tensor_mode) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    int col = col0 + static_cast<int>(i);
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (tensor_mode && s.substr(i, 3) == "(x)") {
      out.push_back({Tok::tensor, "(x)", col});
      i += 3;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::number, std::string(s.substr(i, j - i)), col});
      i = j;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      // x_+ and x_- style names
      if (s[j - 1] == '_' && j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
      out.push_back({Tok::ident, std::string(s.substr(i, j - i)), col});
      i = j;
      continue;
    }
    Tok k;
    switch (c) {
      case '+':
        k = Tok::plus;
        break;
      case '-':
        k = Tok::minus;
        break;
      case '*':
        k = Tok::star;
        break;
      case '/':
        k = Tok::slash;
        break;
      case '^':
        k = Tok::caret;
        break;
      case '(':
        k = Tok::lparen;
        break;
      case ')':
        k = Tok::rparen;
        break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back({k, std::string(1, c), col});
    ++i;
  }
  out.push_back({Tok::end, "", col0 + static_cast<int>(s.size())});
  return out;
}

/// Recursive-descent parser over one line of text.
class ExprParser {
 public:
  ExprParser(std::string_view text, const Presentation* p, int line, int col0, bool tensor_mode)
      : toks_(lex(text, line, col0, tensor_mode)), p_(p), line_(line) {}

  Element element() {
    Element e = expr();
    expect_end();
    return e;
  }

  TensorElement tensor(int legs) {
    TensorElement out(legs);
    bool negative = false;
    if (peek().kind == Tok::plus || peek().kind == Tok::minus) negative = next().kind == Tok::minus;
    while (true) {
      int col = peek().column;
      std::vector<Element> factors{term()};
      while (peek().kind == Tok::tensor) {
        next();
        factors.push_back(term());
      }
      if (static_cast<int>(factors.size()) != legs) {
        throw ParseError("expected " + std::to_string(legs) + " tensor legs, found " + std::to_string(factors.size()),
                         line_, col);
      }
      out.add(TensorElement::pure(factors), Scalar(negative ? -1 : 1));
      if (peek().kind == Tok::plus || peek().kind == Tok::minus) {
        negative = next().kind == Tok::minus;
        continue;
      }
      break;
    }
    expect_end();
    return out;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg, const Token& t) const { throw ParseError(msg, line_, t.column); }

  void expect_end() {
    if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "'", peek());
  }

  Element expr() {
    Element acc;
    bool negative = false;
    if (peek().kind == Tok::plus || peek().kind == Tok::minus) negative = next().kind == Tok::minus;
    acc.add(term(), Scalar(negative ? -1 : 1));
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      bool minus = next().kind == Tok::minus;
      acc.add(term(), Scalar(minus ? -1 : 1));
    }
    return acc;
  }

  Element term() {
    Element acc = unary();
    while (peek().kind == Tok::star || peek().kind == Tok::slash) {
      const Token& op = next();
      const Token& at = peek();
      Element rhs = unary();
      if (op.kind == Tok::star) {
        acc = free_product(acc, rhs);
      } else {
        if (!rhs.is_scalar()) fail("division by a non-scalar", at);
        if (rhs.is_zero()) throw DivisionByZero("division by zero at column " + std::to_string(at.column));
        acc = rhs.scalar_part().inverse() * acc;
      }
    }
    return acc;
  }

  Element unary() {
    if (peek().kind == Tok::minus) {
      next();
      return -unary();
    }
    return factor();
  }

  int exponent() {
    bool negative = false;
    bool paren = false;
    if (peek().kind == Tok::lparen) {
      next();
      paren = true;
    }
    if (peek().kind == Tok::minus || peek().kind == Tok::plus) negative = next().kind == Tok::minus;
    if (peek().kind != Tok::number) fail("expected integer exponent", peek());
    const Token& t = next();
    if (t.text.size() > 6) fail("exponent too large", t);
    int e = std::stoi(t.text);
    if (paren) {
      if (peek().kind != Tok::rparen) fail("expected ')'", peek());
      next();
    }
    return negative ? -e : e;
  }

  Element factor() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::number: {
        Element e(Scalar(GaussRational(mpq_class(t.text))));
        return maybe_power(e, t);
      }
      case Tok::lparen: {
        Element e = expr();
        if (peek().kind != Tok::rparen) fail("expected ')'", peek());
        next();
        return maybe_power(e, t);
      }
      case Tok::ident:
        return identifier(t);
      default:
        fail(t.kind == Tok::end ? "unexpected end of expression" : "unexpected '" + t.text + "'", t);
    }
  }

  Element maybe_power(const Element& e, const Token& at) {
    if (peek().kind != Tok::caret) return e;
    next();
    int k = exponent();
    if (e.is_scalar()) {
      if (k < 0 && e.is_zero()) fail("negative power of zero", at);
      return Element(e.scalar_part().pow(k));
    }
    if (k < 0) fail("negative power of a non-scalar expression", at);
    Element acc(1);
    for (int i = 0; i < k; ++i) acc = free_product(acc, e);
    return acc;
  }

  Element identifier(const Token& t) {
    if (p_ != nullptr) {
      if (auto g = p_->find_generator(t.text)) {
        int k = 1;
        if (peek().kind == Tok::caret) {
          next();
          k = exponent();
        }
        if (k < 0 && !p_->generators()[*g].invertible) {
          fail("generator '" + t.text + "' is not invertible", t);
        }
        Word w(static_cast<std::size_t>(std::abs(k)), make_letter(*g, k < 0));
        return Element::word(w);
      }
    }
    static const std::map<std::string, Scalar> symbols{
        {"s", Scalar::s()},
        {"q", Scalar::q()},
        {"h", Scalar::param(Param::h)},
        {"hb", Scalar::param(Param::hb)},
        {"c", Scalar::param(Param::c)},
        {"I", Scalar::i_unit()},
    };
    auto it = symbols.find(t.text);
    if (it == symbols.end()) fail("unknown identifier '" + t.text + "'", t);
    return maybe_power(Element(it->second), t);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Presentation* p_;
  int line_;
};

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

struct Line {
  int number;
  int indent;  // column of first character of `text`, 1-based
  std::string text;
};

// Splits `text` into the part before and after `sep`, tracking the column.
bool split_at(const Line& l, const std::string& sep, Line& lhs, Line& rhs) {
  auto pos = l.text.find(sep);
  if (pos == std::string::npos) return false;
  lhs = {l.number, l.indent, l.text.substr(0, pos)};
  rhs = {l.number, l.indent + static_cast<int>(pos + sep.size()), l.text.substr(pos + sep.size())};
  return true;
}

Element element_at(const Line& l, const Presentation& p) {
  return ExprParser(l.text, &p, l.number, l.indent, false).element();
}

template <class E>
[[noreturn]] void rethrow_at(const E& e, int line) {
  throw E("line " + std::to_string(line) + ": " + e.what());
}

void add_relation_line(PresentationBuilder& b, const Line& l) {
  const Presentation& p = b.current();
  Line lhs;
  Line rhs;
  try {
    if (split_at(l, "->", lhs, rhs)) {
      Element left = element_at(lhs, p);
      if (left.size() != 1 || !left.terms().begin()->second.is_one() || left.terms().begin()->first.empty()) {
        throw ParseError("left-hand side of a rule must be a single word", l.number, lhs.indent);
      }
      b.add_rule(left.terms().begin()->first, element_at(rhs, p));
      return;
    }
    if (!split_at(l, "=", lhs, rhs)) throw ParseError("expected '=' or '->'", l.number, l.indent);
    Element left = element_at(lhs, p);
    Element right = element_at(rhs, p);
    Parity pl = p.parity(left);
    Parity pr = p.parity(right);
    if (!left.is_zero() && !right.is_zero() && pl != pr) {
      throw ParityError("parity mismatch: " + p.format(left) + " is " + (pl == Parity::odd ? "odd" : "even") +
                        ", " + p.format(right) + " is " + (pr == Parity::odd ? "odd" : "even"));
    }
    b.add_relation(left - right);
  } catch (const ParityError& e) {
    rethrow_at(e, l.number);
  } catch (const PresentationError& e) {
    rethrow_at(e, l.number);
  }
}

std::vector<std::string> words_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string w;
  while (is >> w) {
    while (!w.empty() && w.back() == ',') w.pop_back();
    if (!w.empty()) out.push_back(w);
  }
  return out;
}

void parse_generator_line(PresentationBuilder& b, const Line& l) {
  Line names;
  Line attrs;
  if (!split_at(l, ":", names, attrs)) throw ParseError("expected 'name : parity [flags]'", l.number, l.indent);
  Generator proto;
  bool have_parity = false;
  for (const auto& a : words_of(attrs.text)) {
    if (a == "even" || a == "odd") {
      proto.parity = a == "odd" ? Parity::odd : Parity::even;
      have_parity = true;
    } else if (a == "invertible") {
      proto.invertible = true;
    } else if (a == "incomplete") {
      proto.incomplete = true;
    } else {
      throw ParseError("unknown generator attribute '" + a + "'", l.number, attrs.indent);
    }
  }
  if (!have_parity) throw ParseError("generator parity missing", l.number, attrs.indent);
  for (const auto& n : words_of(names.text)) {
    auto toks = lex(n, l.number, l.indent, false);
    if (toks.size() != 2 || toks[0].kind != Tok::ident) {
      throw ParseError("bad generator name '" + n + "'", l.number, l.indent);
    }
    Generator g = proto;
    g.name = n;
    try {
      b.add_generator(g);
    } catch (const PresentationError& e) {
      rethrow_at(e, l.number);
    }
  }
}

void parse_map_line(const Line& l, const Presentation& p, StructureMaps& maps) {
  Line head;
  Line body;
  if (!split_at(l, "=", head, body)) throw ParseError("expected 'kind generator = image'", l.number, l.indent);
  auto parts = words_of(head.text);
  if (parts.size() != 2) throw ParseError("expected 'kind generator'", l.number, l.indent);
  auto g = p.find_generator(parts[1]);
  if (!g) throw ParseError("unknown generator '" + parts[1] + "'", l.number, l.indent);
  const std::string& kind = parts[0];
  if (kind == "coproduct") {
    maps.coproduct[*g] = ExprParser(body.text, &p, l.number, body.indent, true).tensor(2);
  } else if (kind == "counit") {
    Element e = element_at(body, p);
    if (!e.is_scalar()) throw ParseError("counit image must be a scalar", l.number, body.indent);
    maps.counit[*g] = e.scalar_part();
  } else if (kind == "antipode") {
    maps.antipode[*g] = element_at(body, p);
  } else if (kind == "star") {
    maps.star[*g] = element_at(body, p);
  } else {
    throw ParseError("unknown map kind '" + kind + "'", l.number, l.indent);
  }
}

TransformSpec parse_transform_lines(const std::vector<Line>& lines, const Presentation& source) {
  TransformSpec t;
  std::vector<std::string> targets;
  std::vector<Line> rows;
  for (const auto& l : lines) {
    auto ws = words_of(l.text);
    if (!ws.empty() && ws[0] == "name" && l.text.find('=') == std::string::npos) {
      if (ws.size() != 2) throw ParseError("expected 'name NAME'", l.number, l.indent);
      t.name = ws[1];
    } else if (!ws.empty() && ws[0] == "target" && l.text.find('=') == std::string::npos) {
      targets.assign(ws.begin() + 1, ws.end());
    } else {
      rows.push_back(l);
    }
  }
  std::size_t n = source.generators().size();
  if (targets.size() != n) {
    throw ShapeError("transform needs " + std::to_string(n) + " target generators, got " +
                     std::to_string(targets.size()));
  }
  PresentationBuilder tb("transform-target");
  for (std::size_t i = 0; i < n; ++i) {
    Generator g = source.generators()[i];
    g.name = targets[i];
    g.incomplete = false;
    t.target.push_back(g);
    tb.add_generator(g);
  }
  Presentation target = tb.build();
  t.matrix.assign(n, std::vector<Scalar>(n));
  std::vector<bool> seen(n, false);
  for (const auto& l : rows) {
    Line lhs;
    Line rhs;
    if (!split_at(l, "=", lhs, rhs)) throw ParseError("expected 'source = combination'", l.number, l.indent);
    std::string name = trim(lhs.text);
    auto src = source.find_generator(name);
    if (!src) throw ParseError("unknown source generator '" + name + "'", l.number, l.indent);
    Element e = element_at(rhs, target);
    for (const auto& [w, c] : e.terms()) {
      if (w.size() != 1 || letter_is_inverse(w[0])) {
        throw ParseError("transform rows must be linear in the target generators", l.number, rhs.indent);
      }
      t.matrix[*src][letter_generator(w[0])] = c;
    }
    seen[*src] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen[i]) throw ShapeError("transform row missing for " + source.generators()[i].name);
    t.source.push_back(source.generators()[i].name);
  }
  return t;
}

bool truthy(const std::string& v) { return v == "true" || v == "yes" || v == "1"; }

}  // namespace

Scalar parse_scalar(std::string_view text) {
  Element e = ExprParser(text, nullptr, 1, 1, false).element();
  return e.scalar_part();
}

Element parse_element(std::string_view text, const Presentation& p) {
  return ExprParser(text, &p, 1, 1, false).element();
}

TensorElement parse_tensor(std::string_view text, const Presentation& p, int legs) {
  return ExprParser(text, &p, 1, 1, true).tensor(legs);
}

SpecFile parse_spec(std::string_view text, const std::string& default_name) {
  std::map<std::string, std::vector<Line>> sections;
  std::vector<Line> top;
  std::string current;
  int number = 0;
  std::istringstream is{std::string(text)};
  std::string raw;
  static const std::vector<std::string> known{"generators", "relations", "maps", "transform", "pairing"};
  while (std::getline(is, raw)) {
    ++number;
    auto hash = raw.find('#');
    std::string body = hash == std::string::npos ? raw : raw.substr(0, hash);
    std::string t = trim(body);
    if (t.empty()) continue;
    int indent = static_cast<int>(body.find_first_not_of(" \t")) + 1;
    if (t.front() == '[') {
      if (t.back() != ']') throw ParseError("unterminated section header", number, indent);
      current = trim(t.substr(1, t.size() - 2));
      if (std::find(known.begin(), known.end(), current) == known.end()) {
        throw ParseError("unknown section '" + current + "'", number, indent);
      }
      continue;
    }
    Line l{number, indent, t};
    if (current.empty()) {
      top.push_back(l);
    } else {
      sections[current].push_back(l);
    }
  }

  SpecFile spec;
  std::string name = default_name;
  bool generic_q = false;
  for (const auto& l : top) {
    Line k;
    Line v;
    if (!split_at(l, "=", k, v)) throw ParseError("expected 'key = value'", l.number, l.indent);
    std::string key = trim(k.text);
    std::string value = trim(v.text);
    if (key == "name") {
      name = value;
    } else if (key == "generic-q") {
      generic_q = truthy(value);
    } else {
      spec.options.emplace_back(key, value);
    }
  }

  PresentationBuilder b(name);
  b.set_requires_generic_q(generic_q);
  for (const auto& l : sections["generators"]) parse_generator_line(b, l);
  for (const auto& l : sections["relations"]) add_relation_line(b, l);
  spec.presentation = b.build();
  for (const auto& l : sections["maps"]) parse_map_line(l, spec.presentation, spec.maps);
  if (sections.count("transform")) spec.transform = parse_transform_lines(sections["transform"], spec.presentation);
  for (const auto& l : sections["pairing"]) {
    Line k;
    Line v;
    if (!split_at(l, "=", k, v)) throw ParseError("expected 'key = value'", l.number, l.indent);
    spec.pairing.emplace_back(trim(k.text), trim(v.text));
  }
  return spec;
}

TransformSpec parse_transform(std::string_view text, const Presentation& source) {
  std::vector<Line> lines;
  std::istringstream is{std::string(text)};
  std::string raw;
  int number = 0;
  while (std::getline(is, raw)) {
    ++number;
    auto hash = raw.find('#');
    std::string body = hash == std::string::npos ? raw : raw.substr(0, hash);
    std::string t = trim(body);
    if (t.empty() || t == "[transform]") continue;
    lines.push_back({number, static_cast<int>(body.find_first_not_of(" \t")) + 1, t});
  }
  return parse_transform_lines(lines, source);
}

Presentation augment(const Presentation& base, std::string_view text, const std::string& suffix) {
  PresentationBuilder b(base);
  b.set_name(base.name() + suffix);
  std::istringstream is{std::string(text)};
  std::string raw;
  int number = 0;
  while (std::getline(is, raw)) {
    ++number;
    auto hash = raw.find('#');
    std::string body = hash == std::string::npos ? raw : raw.substr(0, hash);
    std::string t = trim(body);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t != "[relations]") throw ParseError("augmentation files may only contain relations", number, 1);
      continue;
    }
    int indent = static_cast<int>(body.find_first_not_of(" \t")) + 1;
    add_relation_line(b, Line{number, indent, t});
  }
  return b.build();
}

std::string print_spec(const Presentation& p, const StructureMaps* maps) {
  std::ostringstream os;
  os << "name = " << p.name() << "\n";
  if (p.requires_generic_q()) os << "generic-q = true\n";
  os << "\n[generators]\n";
  for (const auto& g : p.generators()) {
    os << g.name << " : " << (g.parity == Parity::odd ? "odd" : "even");
    if (g.invertible) os << " invertible";
    if (g.incomplete) os << " incomplete";
    os << "\n";
  }
  os << "\n[relations]\n";
  for (const auto& r : p.rules()) {
    if (r.derived) continue;
    os << p.format(r.lhs) << " -> " << p.format(r.rhs) << "\n";
  }
  if (maps != nullptr && (maps->has_hopf() || maps->has_star())) {
    os << "\n[maps]\n";
    for (const auto& [g, t] : maps->coproduct) os << "coproduct " << p.generators()[g].name << " = " << format(t, p) << "\n";
    for (const auto& [g, c] : maps->counit) os << "counit " << p.generators()[g].name << " = " << c.to_string() << "\n";
    for (const auto& [g, e] : maps->antipode) os << "antipode " << p.generators()[g].name << " = " << p.format(e) << "\n";
    for (const auto& [g, e] : maps->star) os << "star " << p.generators()[g].name << " = " << p.format(e) << "\n";
  }
  return os.str();
}

}  // namespace qsv
