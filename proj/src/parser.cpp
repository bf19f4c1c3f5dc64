#include "hoil/parser.hpp"

#include <cctype>
#include <cstdint>

namespace hoil {

namespace {

enum class Tok {
  End,
  Ident,
  IntLit,
  FloatLit,
  DoubleLit,
  CharLit,
  StringLit,
  // punctuation and operators
  Plus, Minus, Star, Slash, Percent, Caret,
  Gt, Lt, Ge, Le, EqEq, Assign,
  AndAnd, OrOr, Bang, Amp, Pipe, Tilde,
  At, Hash, LBracket, RBracket, LParen, RParen, LBrace, RBrace,
  Comma, Colon, Dot, Semi,
};

struct Token {
  Tok kind = Tok::End;
  SourcePos pos;
  std::string text;       // identifiers
  std::int64_t int_value = 0;
  double double_value = 0;
  float float_value = 0;
  char32_t char_value = 0;
  std::string string_value;
};

class Lexer {
 public:
  Lexer(std::string_view src, std::string file) : src_(src), file_(std::move(file)) {
    advance();
  }

  const Token& peek() const { return current_; }
  Token take() {
    Token t = current_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& message, SourcePos pos) const {
    throw Error(ErrorCode::SyntaxError, message, pos);
  }

 private:
  void advance() {
    skip_trivia();
    current_ = Token{};
    current_.pos = pos_here();
    if (at_end()) {
      current_.kind = Tok::End;
      return;
    }
    char c = src_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) return lex_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return lex_ident();
    if (c == '"') return lex_string();
    if (c == '\'') return lex_char();
    lex_punct();
  }

  bool at_end() const { return i_ >= src_.size(); }

  SourcePos pos_here() const { return SourcePos{line_, col_}; }

  void bump() {
    if (src_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip_trivia() {
    while (!at_end()) {
      char c = src_[i_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump();
      } else if (c == '/' && i_ + 1 < src_.size() && src_[i_ + 1] == '/') {
        while (!at_end() && src_[i_] != '\n') bump();
      } else {
        break;
      }
    }
  }

  void lex_number() {
    const SourcePos start = current_.pos;
    std::uint64_t value = 0;
    bool overflow = false;
    auto digits = [&] {
      while (!at_end() && std::isdigit(static_cast<unsigned char>(src_[i_]))) {
        if (value > (UINT64_MAX - 9) / 10) overflow = true;
        value = value * 10 + static_cast<std::uint64_t>(src_[i_] - '0');
        bump();
      }
    };
    const std::size_t begin = i_;
    digits();
    bool is_double = false;
    if (!at_end() && src_[i_] == '.' && i_ + 1 < src_.size() &&
        std::isdigit(static_cast<unsigned char>(src_[i_ + 1]))) {
      is_double = true;
      bump();
      digits();
    }
    if (!at_end() && (src_[i_] == 'e' || src_[i_] == 'E')) {
      std::size_t save_i = i_;
      int save_line = line_, save_col = col_;
      bump();
      if (!at_end() && (src_[i_] == '+' || src_[i_] == '-')) bump();
      if (!at_end() && std::isdigit(static_cast<unsigned char>(src_[i_]))) {
        is_double = true;
        digits();
      } else {
        i_ = save_i;
        line_ = save_line;
        col_ = save_col;
      }
    }
    bool is_float = false;
    if (!at_end() && src_[i_] == 'f') {
      is_float = true;
      bump();
    }
    const std::string text(src_.substr(begin, i_ - begin - (is_float ? 1 : 0)));
    if (is_float) {
      current_.kind = Tok::FloatLit;
      current_.float_value = std::strtof(text.c_str(), nullptr);
    } else if (is_double) {
      current_.kind = Tok::DoubleLit;
      current_.double_value = std::strtod(text.c_str(), nullptr);
    } else {
      if (overflow || value > static_cast<std::uint64_t>(INT64_MAX)) {
        fail("integer literal does not fit in 64 bits", start);
      }
      current_.kind = Tok::IntLit;
      current_.int_value = static_cast<std::int64_t>(value);
    }
  }

  void lex_ident() {
    std::size_t begin = i_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(src_[i_])) ||
                         src_[i_] == '_')) {
      bump();
    }
    current_.kind = Tok::Ident;
    current_.text = std::string(src_.substr(begin, i_ - begin));
  }

  char escape(char e, SourcePos at) {
    switch (e) {
      case 'n': return '\n';
      case 't': return '\t';
      case 'r': return '\r';
      case '\\': return '\\';
      case '\'': return '\'';
      case '"': return '"';
      case '0': return '\0';
      default: fail(std::string("unknown escape \\") + e, at);
    }
  }

  void lex_string() {
    const SourcePos start = current_.pos;
    bump();  // opening quote
    std::string out;
    while (!at_end() && src_[i_] != '"') {
      char c = src_[i_];
      if (c == '\n') fail("unterminated string literal", start);
      bump();
      if (c == '\\') {
        if (at_end()) fail("unterminated string literal", start);
        char e = src_[i_];
        bump();
        out += escape(e, start);
      } else {
        out += c;
      }
    }
    if (at_end()) fail("unterminated string literal", start);
    bump();  // closing quote
    current_.kind = Tok::StringLit;
    current_.string_value = std::move(out);
  }

  char32_t decode_utf8(SourcePos at) {
    unsigned char b0 = static_cast<unsigned char>(src_[i_]);
    int len = b0 < 0x80 ? 1 : (b0 >> 5) == 0x6 ? 2 : (b0 >> 4) == 0xE ? 3
              : (b0 >> 3) == 0x1E ? 4 : 0;
    if (len == 0 || i_ + static_cast<std::size_t>(len) > src_.size()) {
      fail("invalid UTF-8 in character literal", at);
    }
    char32_t cp = len == 1 ? b0 : b0 & (0x7F >> (len + 1));
    bump();
    for (int k = 1; k < len; ++k) {
      cp = (cp << 6) | (static_cast<unsigned char>(src_[i_]) & 0x3F);
      bump();
    }
    return cp;
  }

  void lex_char() {
    const SourcePos start = current_.pos;
    bump();  // opening quote
    if (at_end()) fail("unterminated character literal", start);
    char32_t cp;
    if (src_[i_] == '\\') {
      bump();
      if (at_end()) fail("unterminated character literal", start);
      char e = src_[i_];
      bump();
      cp = static_cast<char32_t>(static_cast<unsigned char>(escape(e, start)));
    } else {
      cp = decode_utf8(start);
    }
    if (at_end() || src_[i_] != '\'') fail("unterminated character literal", start);
    bump();  // closing quote
    current_.kind = Tok::CharLit;
    current_.char_value = cp;
  }

  void lex_punct() {
    const SourcePos at = current_.pos;
    char c = src_[i_];
    bump();
    auto two = [&](char next, Tok pair, Tok single) {
      if (!at_end() && src_[i_] == next) {
        bump();
        current_.kind = pair;
      } else {
        current_.kind = single;
      }
    };
    switch (c) {
      case '+': current_.kind = Tok::Plus; break;
      case '-': current_.kind = Tok::Minus; break;
      case '*': current_.kind = Tok::Star; break;
      case '/': current_.kind = Tok::Slash; break;
      case '%': current_.kind = Tok::Percent; break;
      case '^': current_.kind = Tok::Caret; break;
      case '>': two('=', Tok::Ge, Tok::Gt); break;
      case '<': two('=', Tok::Le, Tok::Lt); break;
      case '=': two('=', Tok::EqEq, Tok::Assign); break;
      case '&': two('&', Tok::AndAnd, Tok::Amp); break;
      case '|': two('|', Tok::OrOr, Tok::Pipe); break;
      case '!': current_.kind = Tok::Bang; break;
      case '~': current_.kind = Tok::Tilde; break;
      case '@': current_.kind = Tok::At; break;
      case '#': current_.kind = Tok::Hash; break;
      case '[': current_.kind = Tok::LBracket; break;
      case ']': current_.kind = Tok::RBracket; break;
      case '(': current_.kind = Tok::LParen; break;
      case ')': current_.kind = Tok::RParen; break;
      case '{': current_.kind = Tok::LBrace; break;
      case '}': current_.kind = Tok::RBrace; break;
      case ',': current_.kind = Tok::Comma; break;
      case ':': current_.kind = Tok::Colon; break;
      case '.': current_.kind = Tok::Dot; break;
      case ';': current_.kind = Tok::Semi; break;
      default: fail(std::string("unexpected character '") + c + "'", at);
    }
  }

  std::string_view src_;
  std::string file_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token current_;
};

bool is_keyword(const Token& t, std::string_view kw) {
  return t.kind == Tok::Ident && t.text == kw;
}

class Parser {
 public:
  Parser(std::string_view src, std::string file, Program& program)
      : lexer_(src, file), program_(program) {}

  ExprPtr parse_expression() { return parse_where(); }

  void expect_end() {
    if (lexer_.peek().kind != Tok::End) {
      lexer_.fail("unexpected input after expression", lexer_.peek().pos);
    }
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    lexer_.fail(msg, lexer_.peek().pos);
  }

  Token expect(Tok kind, const std::string& what) {
    if (lexer_.peek().kind != kind) fail("expected " + what);
    return lexer_.take();
  }

  bool consume(Tok kind) {
    if (lexer_.peek().kind == kind) {
      lexer_.take();
      return true;
    }
    return false;
  }

  bool consume_keyword(std::string_view kw) {
    if (is_keyword(lexer_.peek(), kw)) {
      lexer_.take();
      return true;
    }
    return false;
  }

  ExprPtr make(SourcePos pos, auto node) {
    return std::make_shared<Expr>(Expr{pos, std::move(node), std::nullopt});
  }

  ExprPtr parse_where() { return attach_where(parse_if()); }

  ExprPtr attach_where(ExprPtr body) {
    while (is_keyword(lexer_.peek(), "where")) {
      const SourcePos pos = lexer_.take().pos;
      WhereExpr where;
      where.body = body;
      while (!is_keyword(lexer_.peek(), "end")) {
        if (lexer_.peek().kind == Tok::End) fail("expected 'end' to close where");
        parse_declaration(where);
        consume(Tok::Semi);
      }
      lexer_.take();  // end
      body = make(pos, std::move(where));
    }
    return body;
  }

  void parse_declaration(WhereExpr& where) {
    if (consume_keyword("dimension")) {
      DimensionDeclNode decl;
      decl.pos = lexer_.peek().pos;
      decl.name = expect(Tok::Ident, "dimension name").text;
      if (consume(Tok::Assign)) {
        decl.tags = parse_tag_set();
      }
      where.dimensions.push_back(std::move(decl));
      return;
    }
    VarBinding binding;
    binding.pos = lexer_.peek().pos;
    binding.name = expect(Tok::Ident, "binding name").text;
    expect(Tok::Assign, "'=' in binding");
    binding.expr = parse_where();
    binding.binding_id = program_.binding_count++;
    where.bindings.push_back(std::move(binding));
  }

  TagSet parse_tag_set() {
    const SourcePos pos = lexer_.peek().pos;
    expect(Tok::LBrace, "'{' to open a tag set");
    std::vector<TagValue> tags;
    if (!consume(Tok::RBrace)) {
      do {
        tags.push_back(parse_tag_value());
      } while (consume(Tok::Comma));
      expect(Tok::RBrace, "'}' to close the tag set");
    }
    try {
      return TagSet::from_values(std::move(tags));
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), pos);
    }
  }

  TagValue parse_tag_value() {
    const Token& t = lexer_.peek();
    if (t.kind == Tok::IntLit) return TagValue::of_int(lexer_.take().int_value);
    if (t.kind == Tok::Minus) {
      lexer_.take();
      Token n = expect(Tok::IntLit, "integer tag");
      return TagValue::of_int(-n.int_value);
    }
    if (t.kind == Tok::StringLit) {
      return TagValue::of_string(lexer_.take().string_value);
    }
    fail("expected an integer or string tag");
  }

  ExprPtr parse_if() {
    if (is_keyword(lexer_.peek(), "if")) {
      const SourcePos pos = lexer_.take().pos;
      IfExpr node;
      node.condition = parse_if();
      if (!consume_keyword("then")) fail("expected 'then'");
      node.then_branch = parse_if();
      if (!consume_keyword("else")) fail("expected 'else'");
      node.else_branch = parse_if();
      return make(pos, std::move(node));
    }
    return parse_binary(0);
  }

  struct OpInfo {
    BinaryKind kind;
    ArithOp arith{};
    CompareOp comp{};
    LogicOp logic{};
    BitwiseOp bitwise{};
  };

  // precedence levels from loosest to tightest; ^ is right-associative
  std::optional<OpInfo> match_level(int level) {
    const Token& t = lexer_.peek();
    auto logic_op = [](LogicOp op) {
      return OpInfo{BinaryKind::Logic, {}, {}, op, {}};
    };
    auto bit_op = [](BitwiseOp op) {
      return OpInfo{BinaryKind::Bitwise, {}, {}, {}, op};
    };
    auto cmp_op = [](CompareOp op) {
      return OpInfo{BinaryKind::Compare, {}, op, {}, {}};
    };
    auto arith_op = [](ArithOp op) {
      return OpInfo{BinaryKind::Arith, op, {}, {}, {}};
    };
    switch (level) {
      case 0:
        if (t.kind == Tok::OrOr) return logic_op(LogicOp::Or);
        if (is_keyword(t, "nor")) return logic_op(LogicOp::Nor);
        return std::nullopt;
      case 1:
        if (is_keyword(t, "xor")) return logic_op(LogicOp::Xor);
        return std::nullopt;
      case 2:
        if (t.kind == Tok::AndAnd) return logic_op(LogicOp::And);
        if (is_keyword(t, "nand")) return logic_op(LogicOp::Nand);
        return std::nullopt;
      case 3:
        if (t.kind == Tok::Pipe) return bit_op(BitwiseOp::Or);
        if (is_keyword(t, "bnor")) return bit_op(BitwiseOp::Nor);
        return std::nullopt;
      case 4:
        if (is_keyword(t, "bxor")) return bit_op(BitwiseOp::Xor);
        return std::nullopt;
      case 5:
        if (t.kind == Tok::Amp) return bit_op(BitwiseOp::And);
        if (is_keyword(t, "bnand")) return bit_op(BitwiseOp::Nand);
        return std::nullopt;
      case 6:
        if (t.kind == Tok::Gt) return cmp_op(CompareOp::Gt);
        if (t.kind == Tok::Lt) return cmp_op(CompareOp::Lt);
        if (t.kind == Tok::Ge) return cmp_op(CompareOp::Ge);
        if (t.kind == Tok::Le) return cmp_op(CompareOp::Le);
        if (t.kind == Tok::EqEq) return cmp_op(CompareOp::Eq);
        return std::nullopt;
      case 7:
        if (t.kind == Tok::Plus) return arith_op(ArithOp::Add);
        if (t.kind == Tok::Minus) return arith_op(ArithOp::Subtract);
        return std::nullopt;
      case 8:
        if (t.kind == Tok::Star) return arith_op(ArithOp::Multiply);
        if (t.kind == Tok::Slash) return arith_op(ArithOp::Divide);
        if (t.kind == Tok::Percent) return arith_op(ArithOp::Mod);
        return std::nullopt;
      case 9:
        if (t.kind == Tok::Caret) return arith_op(ArithOp::Pow);
        return std::nullopt;
      default:
        return std::nullopt;
    }
  }

  static constexpr int kTightest = 9;

  ExprPtr parse_binary(int level) {
    if (level > kTightest) return parse_unary();
    ExprPtr lhs = parse_binary(level + 1);
    while (auto op = match_level(level)) {
      const SourcePos pos = lexer_.take().pos;
      // ^ is right-associative: recurse at the same level
      ExprPtr rhs = level == kTightest ? parse_binary(level) : parse_binary(level + 1);
      BinaryExpr node;
      node.kind = op->kind;
      node.arith = op->arith;
      node.comp = op->comp;
      node.logic = op->logic;
      node.bitwise = op->bitwise;
      node.lhs = lhs;
      node.rhs = rhs;
      lhs = make(pos, std::move(node));
      if (level == kTightest) break;
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    const Token& t = lexer_.peek();
    if (is_keyword(t, "if")) return parse_if();
    if (t.kind == Tok::Minus || t.kind == Tok::Bang || t.kind == Tok::Tilde) {
      const Token op = lexer_.take();
      UnaryExpr node;
      node.op = op.kind == Tok::Minus ? UnaryOp::Neg
                : op.kind == Tok::Bang ? UnaryOp::Not
                                       : UnaryOp::BitNot;
      node.operand = parse_unary();
      return make(op.pos, std::move(node));
    }
    return parse_postfix();
  }

  ExprPtr parse_postfix() {
    ExprPtr e = parse_primary();
    for (;;) {
      const Token& t = lexer_.peek();
      if (t.kind == Tok::At) {
        const SourcePos pos = lexer_.take().pos;
        SwitchExpr node;
        node.body = e;
        node.pairs = parse_context_pairs();
        e = make(pos, std::move(node));
      } else if (t.kind == Tok::Dot) {
        const SourcePos pos = lexer_.take().pos;
        DotExpr node;
        node.object = e;
        node.member = expect(Tok::Ident, "member name after '.'").text;
        e = make(pos, std::move(node));
      } else if (t.kind == Tok::LBracket) {
        const SourcePos pos = lexer_.take().pos;
        IndexExpr node;
        node.array = e;
        node.index = parse_where();
        expect(Tok::RBracket, "']' to close index");
        e = make(pos, std::move(node));
      } else if (t.kind == Tok::LParen) {
        const SourcePos pos = lexer_.take().pos;
        CallExpr node;
        node.callee = e;
        if (!consume(Tok::RParen)) {
          do {
            node.args.push_back(parse_where());
          } while (consume(Tok::Comma));
          expect(Tok::RParen, "')' to close call");
        }
        e = make(pos, std::move(node));
      } else {
        break;
      }
    }
    return e;
  }

  std::vector<ContextPair> parse_context_pairs() {
    expect(Tok::LBracket, "'[' to open a context literal");
    std::vector<ContextPair> pairs;
    if (consume(Tok::RBracket)) return pairs;
    do {
      ContextPair pair;
      pair.pos = lexer_.peek().pos;
      pair.dimension = expect(Tok::Ident, "dimension name").text;
      expect(Tok::Colon, "':' after dimension name");
      pair.tag = parse_where();
      pairs.push_back(std::move(pair));
    } while (consume(Tok::Comma));
    expect(Tok::RBracket, "']' to close the context literal");
    return pairs;
  }

  ExprPtr parse_primary() {
    const Token& t = lexer_.peek();
    switch (t.kind) {
      case Tok::IntLit: {
        Token tok = lexer_.take();
        return make(tok.pos, LiteralExpr{Value::of_int(tok.int_value)});
      }
      case Tok::DoubleLit: {
        Token tok = lexer_.take();
        return make(tok.pos, LiteralExpr{Value::of_double(tok.double_value)});
      }
      case Tok::FloatLit: {
        Token tok = lexer_.take();
        return make(tok.pos, LiteralExpr{Value::of_float(tok.float_value)});
      }
      case Tok::CharLit: {
        Token tok = lexer_.take();
        return make(tok.pos, LiteralExpr{Value::of_char(tok.char_value)});
      }
      case Tok::StringLit: {
        Token tok = lexer_.take();
        return make(tok.pos, LiteralExpr{Value::of_string(tok.string_value)});
      }
      case Tok::Hash: {
        Token tok = lexer_.take();
        QueryExpr node;
        node.dimension = expect(Tok::Ident, "dimension name after '#'").text;
        return make(tok.pos, std::move(node));
      }
      case Tok::LParen: {
        lexer_.take();
        ExprPtr e = parse_where();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::LBracket:
        return parse_bracket_literal();
      case Tok::Ident: {
        if (t.text == "true" || t.text == "false") {
          Token tok = lexer_.take();
          return make(tok.pos, LiteralExpr{Value::of_bool(tok.text == "true")});
        }
        if (t.text == "where" || t.text == "end" || t.text == "then" ||
            t.text == "else" || t.text == "dimension" || t.text == "if") {
          fail("unexpected keyword '" + t.text + "'");
        }
        Token tok = lexer_.take();
        return make(tok.pos, IdentExpr{tok.text});
      }
      default:
        fail("expected an expression");
    }
  }

  // '[' starts an empty context, a context literal (ident ':'), or an array
  ExprPtr parse_bracket_literal() {
    const SourcePos pos = lexer_.peek().pos;
    expect(Tok::LBracket, "'['");
    if (consume(Tok::RBracket)) {
      return make(pos, ContextLiteralExpr{});
    }
    // context literal iff the first element looks like ident ':'
    if (lexer_.peek().kind == Tok::Ident && !is_keyword(lexer_.peek(), "if")) {
      // need two-token lookahead; parse the identifier and decide on ':'
      Token ident = lexer_.take();
      if (lexer_.peek().kind == Tok::Colon) {
        lexer_.take();
        ContextLiteralExpr node;
        ContextPair first;
        first.pos = ident.pos;
        first.dimension = ident.text;
        first.tag = parse_where();
        node.pairs.push_back(std::move(first));
        while (consume(Tok::Comma)) {
          ContextPair pair;
          pair.pos = lexer_.peek().pos;
          pair.dimension = expect(Tok::Ident, "dimension name").text;
          expect(Tok::Colon, "':' after dimension name");
          pair.tag = parse_where();
          node.pairs.push_back(std::move(pair));
        }
        expect(Tok::RBracket, "']' to close the context literal");
        return make(pos, std::move(node));
      }
      // not a context literal: re-interpret the identifier as the start of
      // an array element expression
      ExprPtr head = finish_expression_from_ident(std::move(ident));
      return parse_array_tail(pos, std::move(head));
    }
    ExprPtr head = parse_where();
    return parse_array_tail(pos, std::move(head));
  }

  // continues parsing an expression whose leading identifier was consumed
  ExprPtr finish_expression_from_ident(Token ident) {
    ExprPtr primary;
    if (ident.text == "true" || ident.text == "false") {
      primary = make(ident.pos, LiteralExpr{Value::of_bool(ident.text == "true")});
    } else {
      primary = make(ident.pos, IdentExpr{ident.text});
    }
    return continue_binary_from(primary);
  }

  // postfix and binary continuation for a prepared primary expression
  ExprPtr continue_binary_from(ExprPtr primary) {
    // replay the postfix loop
    ExprPtr e = primary;
    for (;;) {
      const Token& t = lexer_.peek();
      if (t.kind == Tok::At || t.kind == Tok::Dot || t.kind == Tok::LBracket ||
          t.kind == Tok::LParen) {
        e = continue_postfix_once(e);
      } else {
        break;
      }
    }
    // fold binary operators; precedence climbing with the parsed lhs
    return attach_where(continue_levels(e, 0));
  }

  ExprPtr continue_postfix_once(ExprPtr e) {
    const Token& t = lexer_.peek();
    if (t.kind == Tok::At) {
      const SourcePos pos = lexer_.take().pos;
      SwitchExpr node;
      node.body = e;
      node.pairs = parse_context_pairs();
      return make(pos, std::move(node));
    }
    if (t.kind == Tok::Dot) {
      const SourcePos pos = lexer_.take().pos;
      DotExpr node;
      node.object = e;
      node.member = expect(Tok::Ident, "member name after '.'").text;
      return make(pos, std::move(node));
    }
    if (t.kind == Tok::LBracket) {
      const SourcePos pos = lexer_.take().pos;
      IndexExpr node;
      node.array = e;
      node.index = parse_where();
      expect(Tok::RBracket, "']' to close index");
      return make(pos, std::move(node));
    }
    const SourcePos pos = lexer_.take().pos;  // LParen
    CallExpr node;
    node.callee = e;
    if (!consume(Tok::RParen)) {
      do {
        node.args.push_back(parse_where());
      } while (consume(Tok::Comma));
      expect(Tok::RParen, "')' to close call");
    }
    return make(pos, std::move(node));
  }

  ExprPtr continue_levels(ExprPtr lhs, int level) {
    if (level > kTightest) return lhs;
    lhs = continue_levels(lhs, level + 1);
    while (auto op = match_level(level)) {
      const SourcePos pos = lexer_.take().pos;
      ExprPtr rhs = level == kTightest ? parse_binary(level) : parse_binary(level + 1);
      BinaryExpr node;
      node.kind = op->kind;
      node.arith = op->arith;
      node.comp = op->comp;
      node.logic = op->logic;
      node.bitwise = op->bitwise;
      node.lhs = lhs;
      node.rhs = rhs;
      lhs = make(pos, std::move(node));
      if (level == kTightest) break;
    }
    return lhs;
  }

  ExprPtr parse_array_tail(SourcePos pos, ExprPtr head) {
    ArrayExpr node;
    node.elements.push_back(std::move(head));
    while (consume(Tok::Comma)) {
      node.elements.push_back(parse_where());
    }
    expect(Tok::RBracket, "']' to close the array literal");
    return make(pos, std::move(node));
  }

  Lexer lexer_;
  Program& program_;
};

}  // namespace

Program parse(std::string_view source, std::string source_name) {
  Program program;
  program.source_name = source_name;

  // header directives are line-oriented; blank the consumed lines so the
  // expression lexer keeps real positions
  std::string body(source);
  std::size_t cursor = 0;
  auto peek_line = [&](std::size_t from) {
    std::size_t end = body.find('\n', from);
    if (end == std::string::npos) end = body.size();
    return std::pair<std::size_t, std::size_t>(from, end);
  };
  auto blank_range = [&](std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to && i < body.size(); ++i) {
      if (body[i] != '\n') body[i] = ' ';
    }
  };
  for (;;) {
    // find the first non-space character of the current line
    auto [line_start, line_end] = peek_line(cursor);
    std::size_t first = line_start;
    while (first < line_end && std::isspace(static_cast<unsigned char>(body[first]))) {
      ++first;
    }
    if (first >= line_end) {
      if (line_end >= body.size()) break;
      cursor = line_end + 1;
      continue;
    }
    if (body[first] != '%') break;
    std::string_view directive(body.data() + first, line_end - first);
    if (directive.starts_with("%signatures")) {
      // collect lines until %end
      std::size_t block_start = line_end + 1;
      std::size_t scan = block_start;
      std::size_t block_end = std::string::npos;
      std::size_t after = body.size();
      while (scan <= body.size()) {
        auto [ls, le] = peek_line(scan);
        std::string_view l(body.data() + ls, le - ls);
        std::size_t f = 0;
        while (f < l.size() && std::isspace(static_cast<unsigned char>(l[f]))) ++f;
        if (l.substr(f).starts_with("%end")) {
          block_end = ls;
          after = le;
          break;
        }
        if (le >= body.size()) break;
        scan = le + 1;
      }
      if (block_end == std::string::npos) {
        throw Error(ErrorCode::SyntaxError, "%signatures block missing %end",
                    SourcePos{1, 1});
      }
      auto sigs = parse_signatures(
          std::string_view(body.data() + block_start, block_end - block_start),
          source_name);
      for (auto& s : sigs) program.signatures.push_back(std::move(s));
      blank_range(line_start, after);
      cursor = after;
    } else if (directive.starts_with("%context")) {
      std::string_view literal = directive.substr(std::string_view("%context").size());
      program.initial_context = Context::parse(literal);
      blank_range(line_start, line_end);
      cursor = line_end;
    } else {
      throw Error(ErrorCode::SyntaxError,
                  "unknown directive " + std::string(directive.substr(0, directive.find(' '))),
                  SourcePos{1, 1});
    }
  }

  Parser parser(body, source_name, program);
  program.root = parser.parse_expression();
  parser.expect_end();
  return program;
}

}  // namespace hoil
