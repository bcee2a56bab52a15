// Copyright 2026 The TQSim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tqsim/qasm.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <vector>

namespace tqsim {

QasmError::QasmError(Kind kind, std::size_t line, std::size_t column, const std::string &message)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      kind_(kind),
      line_(line),
      column_(column) {
}

namespace {

struct Token {
    enum class Type { Ident, Number, String, Symbol, Arrow, End } type;
    std::string text;
    std::size_t line;
    std::size_t column;
};

class Lexer {
   public:
    explicit Lexer(std::string_view src) : src_(src) {
    }

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space_and_comments();
            if (pos_ >= src_.size()) {
                out.push_back({Token::Type::End, "", line_, col_});
                return out;
            }
            std::size_t line = line_, col = col_;
            char c = src_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t start = pos_;
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                    advance();
                }
                out.push_back({Token::Type::Ident, std::string(src_.substr(start, pos_ - start)), line, col});
            } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                std::size_t start = pos_;
                while (pos_ < src_.size() &&
                       (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
                    advance();
                }
                if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
                    advance();
                    if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
                        advance();
                    }
                    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                        advance();
                    }
                }
                out.push_back({Token::Type::Number, std::string(src_.substr(start, pos_ - start)), line, col});
            } else if (c == '"') {
                advance();
                std::size_t start = pos_;
                while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
                    advance();
                }
                if (pos_ >= src_.size() || src_[pos_] != '"') {
                    throw QasmError(QasmError::Kind::Syntax, line, col, "unterminated string literal");
                }
                std::string text(src_.substr(start, pos_ - start));
                advance();
                out.push_back({Token::Type::String, std::move(text), line, col});
            } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
                advance();
                advance();
                out.push_back({Token::Type::Arrow, "->", line, col});
            } else if (std::string_view("[](),;+-*/^{}").find(c) != std::string_view::npos) {
                advance();
                out.push_back({Token::Type::Symbol, std::string(1, c), line, col});
            } else {
                throw QasmError(QasmError::Kind::Syntax, line, col, std::string("unexpected character '") + c + "'");
            }
        }
    }

   private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') {
                    advance();
                }
            } else {
                return;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

struct Alias {
    std::string_view name;
    GateTag tag;
    int params;
};

// Names accepted beyond the canonical lower-case mnemonics; all map onto the core gate set.
constexpr Alias kAliases[] = {
    {"CX", GateTag::CX, 0}, {"U", GateTag::U, 3},  {"u3", GateTag::U, 3},   {"u2", GateTag::U, 2},
    {"u1", GateTag::U, 1},  {"p", GateTag::U, 1},  {"cu1", GateTag::CP, 1}, {"cnot", GateTag::CX, 0},
};

struct QubitRef {
    std::optional<std::uint32_t> index;  // nullopt = whole register
    const Token *where;
};

class Parser {
   public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {
    }

    Circuit run() {
        if (peek_ident("OPENQASM")) {
            next();
            expect_type(Token::Type::Number, "version number");
            expect_symbol(";");
        }
        while (peek().type != Token::Type::End) {
            statement();
        }
        if (!qreg_) {
            throw error(peek(), "program declares no qreg");
        }
        Circuit c(qreg_size_);
        for (auto &g : gates_) {
            c.append(std::move(g));
        }
        c.set_measured(measured_);
        return c;
    }

   private:
    const Token &peek() const {
        return toks_[pos_];
    }
    const Token &next() {
        const Token &t = toks_[pos_];
        if (t.type != Token::Type::End) {
            ++pos_;
        }
        return t;
    }
    bool peek_ident(std::string_view s) const {
        return peek().type == Token::Type::Ident && peek().text == s;
    }
    bool peek_symbol(std::string_view s) const {
        return peek().type == Token::Type::Symbol && peek().text == s;
    }

    QasmError error(const Token &t, const std::string &msg, QasmError::Kind kind = QasmError::Kind::Syntax) const {
        return QasmError(kind, t.line, t.column, msg);
    }

    const Token &expect_type(Token::Type type, const char *what) {
        if (peek().type != type) {
            throw error(peek(), std::string("expected ") + what + describe(peek()));
        }
        return next();
    }
    void expect_symbol(std::string_view s) {
        if (!peek_symbol(s)) {
            throw error(peek(), "expected '" + std::string(s) + "'" + describe(peek()));
        }
        next();
    }
    static std::string describe(const Token &t) {
        if (t.type == Token::Type::End) {
            return " but reached end of input";
        }
        return " but found '" + t.text + "'";
    }

    std::uint32_t parse_uint() {
        const Token &t = expect_type(Token::Type::Number, "integer");
        std::uint32_t v = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
            throw error(t, "expected integer but found '" + t.text + "'");
        }
        return v;
    }

    void statement() {
        const Token &head = expect_type(Token::Type::Ident, "statement");
        const std::string &kw = head.text;
        if (kw == "include") {
            expect_type(Token::Type::String, "file name");
            expect_symbol(";");
        } else if (kw == "qreg" || kw == "creg") {
            declaration(head);
        } else if (kw == "barrier") {
            qubit_list();
            expect_symbol(";");
        } else if (kw == "measure") {
            measurement();
        } else if (kw == "gate" || kw == "opaque") {
            throw error(head, "custom gate definitions are not supported", QasmError::Kind::Unsupported);
        } else if (kw == "if" || kw == "reset") {
            throw error(head, "'" + kw + "' is not supported", QasmError::Kind::Unsupported);
        } else {
            gate_statement(head);
        }
    }

    void declaration(const Token &head) {
        const Token &name = expect_type(Token::Type::Ident, "register name");
        expect_symbol("[");
        const Token &size_tok = peek();
        std::uint32_t size = parse_uint();
        expect_symbol("]");
        expect_symbol(";");
        if (size == 0) {
            throw error(size_tok, "register size must be positive");
        }
        if (head.text == "qreg") {
            if (qreg_) {
                throw error(head, "only one qreg is supported", QasmError::Kind::Unsupported);
            }
            qreg_ = name.text;
            qreg_size_ = size;
        } else {
            if (creg_) {
                throw error(head, "only one creg is supported", QasmError::Kind::Unsupported);
            }
            creg_ = name.text;
        }
    }

    QubitRef qubit_ref() {
        const Token &name = expect_type(Token::Type::Ident, "qubit");
        if (!qreg_ || name.text != *qreg_) {
            throw error(name, "unknown quantum register '" + name.text + "'");
        }
        if (!peek_symbol("[")) {
            return {std::nullopt, &name};
        }
        next();
        const Token &idx_tok = peek();
        std::uint32_t idx = parse_uint();
        expect_symbol("]");
        if (idx >= qreg_size_) {
            throw error(idx_tok,
                        "qubit index " + std::to_string(idx) + " out of range for " + name.text + "[" +
                            std::to_string(qreg_size_) + "]",
                        QasmError::Kind::QubitOutOfRange);
        }
        return {idx, &name};
    }

    std::vector<QubitRef> qubit_list() {
        std::vector<QubitRef> refs{qubit_ref()};
        while (peek_symbol(",")) {
            next();
            refs.push_back(qubit_ref());
        }
        return refs;
    }

    void measurement() {
        qubit_ref();
        expect_type(Token::Type::Arrow, "'->'");
        const Token &cname = expect_type(Token::Type::Ident, "classical register");
        if (creg_ && cname.text != *creg_) {
            throw error(cname, "unknown classical register '" + cname.text + "'");
        }
        if (peek_symbol("[")) {
            next();
            parse_uint();
            expect_symbol("]");
        }
        expect_symbol(";");
        measured_ = true;
    }

    // expr := term (('+'|'-') term)*
    double expr() {
        double v = term();
        while (peek_symbol("+") || peek_symbol("-")) {
            bool plus = next().text == "+";
            double rhs = term();
            v = plus ? v + rhs : v - rhs;
        }
        return v;
    }
    // term := factor (('*'|'/') factor)*
    double term() {
        double v = factor();
        while (peek_symbol("*") || peek_symbol("/")) {
            const Token &op = next();
            double rhs = factor();
            if (op.text == "*") {
                v *= rhs;
            } else {
                if (rhs == 0) {
                    throw error(op, "division by zero in angle expression");
                }
                v /= rhs;
            }
        }
        return v;
    }
    double factor() {
        const Token &t = peek();
        if (peek_symbol("-")) {
            next();
            return -factor();
        }
        if (peek_symbol("+")) {
            next();
            return factor();
        }
        if (peek_symbol("(")) {
            next();
            double v = expr();
            expect_symbol(")");
            return v;
        }
        if (t.type == Token::Type::Ident && t.text == "pi") {
            next();
            return std::numbers::pi;
        }
        if (t.type == Token::Type::Number) {
            next();
            double v = 0;
            auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
            if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
                throw error(t, "malformed number '" + t.text + "'");
            }
            return v;
        }
        throw error(t, "expected angle expression" + describe(t));
    }

    void gate_statement(const Token &head) {
        if (measured_) {
            throw error(head, "gates after measurement are not supported", QasmError::Kind::Unsupported);
        }
        std::vector<double> params;
        if (peek_symbol("(")) {
            next();
            if (!peek_symbol(")")) {
                params.push_back(expr());
                while (peek_symbol(",")) {
                    next();
                    params.push_back(expr());
                }
            }
            expect_symbol(")");
        }

        GateTag tag;
        std::vector<double> bound = params;
        if (auto canonical = gate_tag_from_name(head.text)) {
            tag = *canonical;
            if (static_cast<int>(params.size()) != param_count(tag)) {
                throw error(head, "gate '" + head.text + "' expects " + std::to_string(param_count(tag)) +
                                      " parameter(s), got " + std::to_string(params.size()));
            }
        } else {
            const Alias *alias = nullptr;
            for (const auto &a : kAliases) {
                if (a.name == head.text) {
                    alias = &a;
                }
            }
            if (!alias) {
                throw error(head, "unsupported gate '" + head.text + "'", QasmError::Kind::UnsupportedGate);
            }
            if (static_cast<int>(params.size()) != alias->params) {
                throw error(head, "gate '" + head.text + "' expects " + std::to_string(alias->params) +
                                      " parameter(s), got " + std::to_string(params.size()));
            }
            tag = alias->tag;
            if (alias->tag == GateTag::U && alias->params == 2) {
                bound = {std::numbers::pi / 2, params[0], params[1]};
            } else if (alias->tag == GateTag::U && alias->params == 1) {
                bound = {0.0, 0.0, params[0]};
            }
        }

        std::vector<QubitRef> refs = qubit_list();
        expect_symbol(";");
        if (static_cast<int>(refs.size()) != qubit_count(tag)) {
            throw error(head, "gate '" + head.text + "' acts on " + std::to_string(qubit_count(tag)) +
                                  " qubit(s), got " + std::to_string(refs.size()));
        }
        if (refs.size() == 1) {
            if (refs[0].index) {
                gates_.emplace_back(GateKind(tag, bound), std::vector<std::uint32_t>{*refs[0].index});
            } else {
                for (std::uint32_t q = 0; q < qreg_size_; ++q) {
                    gates_.emplace_back(GateKind(tag, bound), std::vector<std::uint32_t>{q});
                }
            }
            return;
        }
        for (const auto &r : refs) {
            if (!r.index) {
                throw error(*r.where, "register broadcast is only supported for single-qubit gates",
                            QasmError::Kind::Unsupported);
            }
        }
        if (*refs[0].index == *refs[1].index) {
            throw error(head, "gate '" + head.text + "' repeats qubit " + std::to_string(*refs[0].index));
        }
        gates_.emplace_back(GateKind(tag, bound), std::vector<std::uint32_t>{*refs[0].index, *refs[1].index});
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::optional<std::string> qreg_;
    std::optional<std::string> creg_;
    std::uint32_t qreg_size_ = 0;
    std::vector<Gate> gates_;
    bool measured_ = false;
};

std::string format_angle(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Circuit parse_qasm(std::string_view text) {
    return Parser(Lexer(text).run()).run();
}

std::string to_qasm(const Circuit &c) {
    std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    out += "qreg q[" + std::to_string(c.n_qubits()) + "];\n";
    out += "creg c[" + std::to_string(c.n_qubits()) + "];\n";
    for (const auto &g : c.gates()) {
        out += gate_name(g.kind.tag());
        auto params = g.kind.params();
        if (!params.empty()) {
            out += "(";
            for (std::size_t i = 0; i < params.size(); ++i) {
                out += (i ? "," : "") + format_angle(params[i]);
            }
            out += ")";
        }
        for (std::size_t i = 0; i < g.qubits.size(); ++i) {
            out += (i ? ",q[" : " q[") + std::to_string(g.qubits[i]) + "]";
        }
        out += ";\n";
    }
    if (c.measured()) {
        out += "measure q -> c;\n";
    }
    return out;
}

}  // namespace tqsim
