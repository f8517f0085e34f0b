#pragma once

#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "wskein/diagram.hpp"
#include "wskein/errors.hpp"

namespace wskein {

// Text format, one vertex per line, `#` starts a comment:
//
//   X+ o_in o_out u_in u_out     positive classical crossing
//   X- o_in o_out u_in u_out     negative classical crossing
//   V  a_in a_out b_in b_out     virtual crossing
//   W  in out                    wen
//   loop                         crossing-free circle
//   end LABEL in|out EDGE        tangle boundary point (tangle files only)

namespace detail {

struct Token {
  std::string text;
  std::size_t column;
};

inline std::vector<Token> tokenize_line(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

class DiagramReader {
 public:
  explicit DiagramReader(bool allow_ends) : allow_ends_(allow_ends) {}

  Tangle read(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t nl = text.find('\n', pos);
      if (nl == std::string_view::npos) nl = text.size();
      ++line_no;
      read_line(text.substr(pos, nl - pos), line_no);
      pos = nl + 1;
    }
    check_closed();
    return std::move(out_);
  }

 private:
  struct Use {
    std::size_t line = 0, column = 0;
    bool seen = false;
  };

  void read_line(std::string_view line, std::size_t line_no) {
    auto toks = tokenize_line(line);
    if (toks.empty()) return;
    const auto& kw = toks[0];
    auto expect = [&](std::size_t n) {
      if (toks.size() != n + 1)
        throw ParseError(line_no, kw.column,
                         kw.text + " expects " + std::to_string(n) + " arguments, got " + std::to_string(toks.size() - 1));
    };
    Diagram& d = out_.diagram;
    if (kw.text == "X+" || kw.text == "X-") {
      expect(4);
      use_in(toks[1], line_no);
      use_out(toks[2], line_no);
      use_in(toks[3], line_no);
      use_out(toks[4], line_no);
      d.classical.push_back({kw.text == "X+" ? Sign::Positive : Sign::Negative, toks[1].text, toks[2].text,
                             toks[3].text, toks[4].text});
    } else if (kw.text == "V") {
      expect(4);
      use_in(toks[1], line_no);
      use_out(toks[2], line_no);
      use_in(toks[3], line_no);
      use_out(toks[4], line_no);
      d.virtual_crossings.push_back({toks[1].text, toks[2].text, toks[3].text, toks[4].text});
    } else if (kw.text == "W") {
      expect(2);
      if (toks[1].text == toks[2].text)
        throw ParseError(line_no, toks[2].column, "wen slots must be distinct edges; a lone wen on a circle is written as three wens");
      use_in(toks[1], line_no);
      use_out(toks[2], line_no);
      d.wens.push_back({toks[1].text, toks[2].text});
    } else if (kw.text == "loop") {
      expect(0);
      ++d.free_loops;
    } else if (kw.text == "end" && allow_ends_) {
      expect(3);
      const auto& dir = toks[2].text;
      if (dir != "in" && dir != "out") throw ParseError(line_no, toks[2].column, "endpoint direction must be 'in' or 'out'");
      for (const auto& ep : out_.boundary)
        if (ep.label == toks[1].text) throw ParseError(line_no, toks[1].column, "duplicate endpoint label '" + ep.label + "'");
      // An inbound endpoint supplies the edge's tail, an outbound one its head.
      if (dir == "in")
        use_out(toks[3], line_no);
      else
        use_in(toks[3], line_no);
      out_.boundary.push_back({toks[1].text, dir == "in" ? EndDirection::In : EndDirection::Out, toks[3].text});
    } else {
      throw ParseError(line_no, kw.column, "unknown vertex keyword '" + kw.text + "'");
    }
  }

  void use_in(const Token& t, std::size_t line_no) { use(heads_, t, line_no, "incoming"); }
  void use_out(const Token& t, std::size_t line_no) { use(tails_, t, line_no, "outgoing"); }

  void use(std::map<std::string, Use>& table, const Token& t, std::size_t line_no, const char* what) {
    auto& u = table[t.text];
    if (u.seen)
      throw ParseError(line_no, t.column,
                       "edge '" + t.text + "' already used as an " + what + " slot on line " + std::to_string(u.line));
    u = {line_no, t.column, true};
    order_.push_back(t.text);
  }

  void check_closed() {
    for (const auto& e : order_) {
      const bool has_head = heads_.count(e) && heads_[e].seen;
      const bool has_tail = tails_.count(e) && tails_[e].seen;
      if (!has_head) {
        const auto& u = tails_[e];
        throw ParseError(u.line, u.column, "edge '" + e + "' has no matching incoming slot");
      }
      if (!has_tail) {
        const auto& u = heads_[e];
        throw ParseError(u.line, u.column, "edge '" + e + "' has no matching outgoing slot");
      }
    }
  }

  bool allow_ends_;
  Tangle out_;
  std::map<std::string, Use> heads_, tails_;
  std::vector<std::string> order_;
};

}  // namespace detail

/// Reads a closed diagram. Throws ParseError.
inline Diagram parse_diagram(std::string_view text) { return detail::DiagramReader(false).read(text).diagram; }

/// Reads a tangle: diagram lines plus `end` lines.
inline Tangle parse_tangle(std::string_view text) { return detail::DiagramReader(true).read(text); }

inline std::string serialize(const Diagram& d) {
  std::ostringstream os;
  for (const auto& c : d.classical)
    os << (c.sign == Sign::Positive ? "X+ " : "X- ") << c.over_in << ' ' << c.over_out << ' ' << c.under_in << ' '
       << c.under_out << '\n';
  for (const auto& v : d.virtual_crossings) os << "V " << v.a_in << ' ' << v.a_out << ' ' << v.b_in << ' ' << v.b_out << '\n';
  for (const auto& w : d.wens) os << "W " << w.in << ' ' << w.out << '\n';
  for (std::size_t i = 0; i < d.free_loops; ++i) os << "loop\n";
  return os.str();
}

inline std::string serialize(const Tangle& t) {
  std::string out = serialize(t.diagram);
  for (const auto& ep : t.boundary)
    out += "end " + ep.label + (ep.direction == EndDirection::In ? " in " : " out ") + ep.edge + "\n";
  return out;
}

}  // namespace wskein
