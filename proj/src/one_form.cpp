#include <cctype>
#include <string>

#include "gq/prequant.hpp"

namespace gq {

namespace {

struct Differential {
  std::size_t begin = 0;
  std::size_t end = 0;
  int slot = 0;
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Recognizes dx<k> / dp<k> (or bare dx / dp when n = 1) as a whole word at
// position i; returns the slot in (x1..xn, p1..pn) order or -1.
int match_differential(std::string_view text, std::size_t i, int dof, std::size_t& end) {
  if (i + 2 > text.size() || text[i] != 'd' || (text[i + 1] != 'x' && text[i + 1] != 'p')) return -1;
  if (i > 0 && ident_char(text[i - 1])) return -1;
  std::size_t j = i + 2;
  while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
  if (j < text.size() && ident_char(text[j])) return -1;
  int index = 0;
  if (j == i + 2) {
    if (dof != 1) throw ParseError(ParseError::Kind::Syntax, i, "bare differential needs n = 1");
    index = 1;
  } else {
    index = std::stoi(std::string(text.substr(i + 2, j - i - 2)));
  }
  if (index < 1 || index > dof) {
    throw ParseError(ParseError::Kind::IndexOutOfRange, i, "differential index out of range");
  }
  end = j;
  return text[i + 1] == 'x' ? index - 1 : dof + index - 1;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

ConnectionForm parse_one_form(std::string_view text, const PhaseSpace& space) {
  const std::string_view t = trim(text);
  if (t == "theta") return ConnectionForm::theta(space.dof());
  if (t == "theta-tilde" || t == "theta_tilde") return ConnectionForm::theta_tilde(space.dof());

  std::vector<Differential> marks;
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth != 0) continue;
    std::size_t end = 0;
    const int slot = match_differential(text, i, space.dof(), end);
    if (slot >= 0) {
      marks.push_back({i, end, slot});
      i = end - 1;
    }
  }
  if (marks.empty()) throw ParseError(ParseError::Kind::Syntax, 0, "one-form has no dx or dp terms");
  if (!trim(text.substr(marks.back().end)).empty()) {
    throw ParseError(ParseError::Kind::Syntax, marks.back().end, "trailing text after the last differential");
  }

  ConnectionForm form;
  form.dof = space.dof();
  form.label = std::string(t);
  form.components.resize(static_cast<std::size_t>(space.dim()));
  std::size_t start = 0;
  for (const Differential& m : marks) {
    std::string_view coef = trim(text.substr(start, m.begin - start));
    const std::size_t offset = start + static_cast<std::size_t>(coef.data() - text.substr(start).data());
    if (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));
    double sign = 1.0;
    if (!coef.empty() && (coef.front() == '+' || coef.front() == '-')) {
      if (coef.front() == '-') sign = -1.0;
      coef = trim(coef.substr(1));
    } else if (&m != &marks.front()) {
      throw ParseError(ParseError::Kind::Syntax, offset, "expected '+' or '-' between one-form terms");
    }
    Expr c = Expr(sign);
    if (!coef.empty()) {
      try {
        c = Expr(sign) * parse(coef, space);
      } catch (const ParseError& e) {
        const std::size_t base = static_cast<std::size_t>(coef.data() - text.data());
        throw ParseError(e.kind(), base + e.offset(), e.what());
      }
    }
    auto& slot = form.components[static_cast<std::size_t>(m.slot)];
    slot = slot + c;
    start = m.end;
  }
  return form;
}

}  // namespace gq
