// Copyright 2026 The vle-miner Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dot_check.hpp"

#include <cctype>

namespace vle::testing {
namespace {

enum class Tok { Id, LBrace, RBrace, LBracket, RBracket, Equals, Semi, Comma, Colon, EdgeOp, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

class Lexer {
public:
  explicit Lexer(const std::string& s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip();
      if (i_ >= s_.size()) {
        out.push_back({Tok::End, "", i_});
        return out;
      }
      const std::size_t at = i_;
      const char c = s_[i_];
      switch (c) {
        case '{': ++i_; out.push_back({Tok::LBrace, "{", at}); continue;
        case '}': ++i_; out.push_back({Tok::RBrace, "}", at}); continue;
        case '[': ++i_; out.push_back({Tok::LBracket, "[", at}); continue;
        case ']': ++i_; out.push_back({Tok::RBracket, "]", at}); continue;
        case '=': ++i_; out.push_back({Tok::Equals, "=", at}); continue;
        case ';': ++i_; out.push_back({Tok::Semi, ";", at}); continue;
        case ',': ++i_; out.push_back({Tok::Comma, ",", at}); continue;
        case ':': ++i_; out.push_back({Tok::Colon, ":", at}); continue;
        default: break;
      }
      if (c == '-' && i_ + 1 < s_.size() && (s_[i_ + 1] == '>' || s_[i_ + 1] == '-')) {
        out.push_back({Tok::EdgeOp, s_.substr(i_, 2), at});
        i_ += 2;
        continue;
      }
      if (c == '"') {
        out.push_back({Tok::Id, quoted(), at});
        continue;
      }
      if (c == '<') {
        out.push_back({Tok::Id, html(), at});
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
          static_cast<unsigned char>(c) >= 0x80) {
        std::size_t j = i_;
        while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_' ||
                                 static_cast<unsigned char>(s_[j]) >= 0x80)) {
          ++j;
        }
        out.push_back({Tok::Id, s_.substr(i_, j - i_), at});
        i_ = j;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-') {
        out.push_back({Tok::Id, numeral(), at});
        continue;
      }
      fail("unexpected character", at);
    }
  }

private:
  [[noreturn]] static void fail(const std::string& what, std::size_t at) {
    throw DotSyntaxError(what + " at offset " + std::to_string(at));
  }

  void skip() {
    while (i_ < s_.size()) {
      const char c = s_[i_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i_;
      } else if (c == '/' && i_ + 1 < s_.size() && s_[i_ + 1] == '/') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else if (c == '/' && i_ + 1 < s_.size() && s_[i_ + 1] == '*') {
        const auto end = s_.find("*/", i_ + 2);
        if (end == std::string::npos) fail("unterminated comment", i_);
        i_ = end + 2;
      } else if (c == '#' && (i_ == 0 || s_[i_ - 1] == '\n')) {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else {
        return;
      }
    }
  }

  std::string quoted() {
    const std::size_t at = i_;
    std::string out;
    ++i_;
    while (i_ < s_.size() && s_[i_] != '"') {
      if (s_[i_] == '\\' && i_ + 1 < s_.size()) {
        if (s_[i_ + 1] == '"') {
          out += '"';
          i_ += 2;
          continue;
        }
        if (s_[i_ + 1] == '\n') {
          i_ += 2;
          continue;
        }
      }
      out += s_[i_++];
    }
    if (i_ >= s_.size()) fail("unterminated string", at);
    ++i_;
    return out;
  }

  std::string html() {
    const std::size_t at = i_;
    int depth = 0;
    std::size_t j = i_;
    do {
      if (j >= s_.size()) fail("unterminated HTML string", at);
      if (s_[j] == '<') ++depth;
      if (s_[j] == '>') --depth;
      ++j;
    } while (depth > 0);
    std::string out = s_.substr(i_ + 1, j - i_ - 2);
    i_ = j;
    return out;
  }

  std::string numeral() {
    const std::size_t at = i_;
    std::size_t j = i_;
    if (s_[j] == '-') ++j;
    bool digits = false;
    bool dot = false;
    while (j < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[j])) || (s_[j] == '.' && !dot))) {
      if (s_[j] == '.') dot = true; else digits = true;
      ++j;
    }
    if (!digits) fail("bad numeral", at);
    std::string out = s_.substr(i_, j - i_);
    i_ = j;
    return out;
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

bool keyword(const Token& t, const char* word) {
  if (t.kind != Tok::Id || t.text.size() != std::char_traits<char>::length(word)) return false;
  for (std::size_t i = 0; i < t.text.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(t.text[i])) != word[i]) return false;
  }
  return true;
}

class Parser {
public:
  explicit Parser(std::vector<Token> tokens) : t_(std::move(tokens)) {}

  DotGraph graph() {
    if (keyword(peek(), "strict")) ++p_;
    if (keyword(peek(), "digraph")) {
      g_.directed = true;
    } else if (!keyword(peek(), "graph")) {
      fail("expected graph or digraph");
    }
    ++p_;
    if (peek().kind == Tok::Id) g_.name = t_[p_++].text;
    expect(Tok::LBrace, "{");
    stmt_list("");
    expect(Tok::RBrace, "}");
    if (peek().kind != Tok::End) fail("trailing input after graph");
    return std::move(g_);
  }

private:
  using Attrs = std::map<std::string, std::string>;

  const Token& peek(std::size_t ahead = 0) const {
    return t_[std::min(p_ + ahead, t_.size() - 1)];
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw DotSyntaxError(what + " at offset " + std::to_string(peek().offset) + " near '" +
                         peek().text + "'");
  }
  void expect(Tok kind, const char* text) {
    if (peek().kind != kind) fail(std::string("expected '") + text + "'");
    ++p_;
  }
  bool is_reserved(const Token& t) const {
    return keyword(t, "node") || keyword(t, "edge") || keyword(t, "graph") ||
           keyword(t, "digraph") || keyword(t, "subgraph") || keyword(t, "strict");
  }

  void stmt_list(const std::string& scope) {
    while (peek().kind != Tok::RBrace && peek().kind != Tok::End) {
      stmt(scope);
      if (peek().kind == Tok::Semi) ++p_;
    }
  }

  void stmt(const std::string& scope) {
    const Token& t = peek();
    if (keyword(t, "graph") || keyword(t, "node") || keyword(t, "edge")) {
      ++p_;
      if (peek().kind != Tok::LBracket) fail("expected attribute list");
      attr_list();
      return;
    }
    if (t.kind == Tok::Id && !is_reserved(t) && peek(1).kind == Tok::Equals) {
      p_ += 2;
      if (peek().kind != Tok::Id) fail("expected ID after '='");
      ++p_;
      return;
    }
    // node_stmt or edge_stmt, possibly starting with a subgraph
    std::vector<std::string> left = operand(scope);
    if (peek().kind != Tok::EdgeOp) {
      if (left.size() == 1 && !last_was_subgraph_) {
        Attrs attrs;
        if (peek().kind == Tok::LBracket) attrs = attr_list();
        declare(left.front(), scope, attrs);
      }
      return;
    }
    std::vector<std::vector<std::string>> chain{left};
    while (peek().kind == Tok::EdgeOp) {
      if (peek().text != (g_.directed ? "->" : "--")) fail("edge operator does not match graph kind");
      ++p_;
      chain.push_back(operand(scope));
    }
    Attrs attrs;
    if (peek().kind == Tok::LBracket) attrs = attr_list();
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
      for (const auto& a : chain[k]) {
        for (const auto& b : chain[k + 1]) {
          declare(a, scope, {});
          declare(b, scope, {});
          g_.edges.push_back({a, b, attrs});
        }
      }
    }
  }

  /// A node_id or a subgraph; returns the node ids it stands for.
  std::vector<std::string> operand(const std::string& scope) {
    last_was_subgraph_ = false;
    if (keyword(peek(), "subgraph") || peek().kind == Tok::LBrace) {
      std::string name;
      if (keyword(peek(), "subgraph")) {
        ++p_;
        if (peek().kind == Tok::Id) name = t_[p_++].text;
      }
      expect(Tok::LBrace, "{");
      const std::size_t before = declared_.size();
      stmt_list(name.empty() ? scope : name);
      expect(Tok::RBrace, "}");
      last_was_subgraph_ = true;
      return {declared_.begin() + static_cast<std::ptrdiff_t>(before), declared_.end()};
    }
    if (peek().kind != Tok::Id || is_reserved(peek())) fail("expected node id");
    std::string id = t_[p_++].text;
    if (peek().kind == Tok::Colon) {  // port
      ++p_;
      if (peek().kind != Tok::Id) fail("expected port");
      ++p_;
      if (peek().kind == Tok::Colon) {
        ++p_;
        if (peek().kind != Tok::Id) fail("expected compass point");
        ++p_;
      }
    }
    return {id};
  }

  Attrs attr_list() {
    Attrs out;
    while (peek().kind == Tok::LBracket) {
      ++p_;
      while (peek().kind != Tok::RBracket) {
        if (peek().kind != Tok::Id) fail("expected attribute name");
        std::string key = t_[p_++].text;
        expect(Tok::Equals, "=");
        if (peek().kind != Tok::Id) fail("expected attribute value");
        out[key] = t_[p_++].text;
        if (peek().kind == Tok::Semi || peek().kind == Tok::Comma) ++p_;
      }
      ++p_;
    }
    return out;
  }

  void declare(const std::string& id, const std::string& scope, const Attrs& attrs) {
    auto [it, inserted] = g_.nodes.try_emplace(id);
    if (inserted) {
      it->second.subgraph = scope;
      declared_.push_back(id);
    }
    for (const auto& [k, v] : attrs) it->second.attrs[k] = v;
  }

  std::vector<Token> t_;
  std::size_t p_ = 0;
  DotGraph g_;
  std::vector<std::string> declared_;
  bool last_was_subgraph_ = false;
};

}  // namespace

DotGraph parse_dot(const std::string& text) {
  return Parser(Lexer(text).run()).graph();
}

}  // namespace vle::testing
