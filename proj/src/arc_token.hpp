#pragma once

// Internal: arc token syntax shared by the parser and the builder.

#include <string>

#include "sfh/errors.hpp"

namespace sfh::detail {

struct ArcToken {
    bool is_suture = false;
    std::string suture;
    int fam = -1, circle = -1, index = -1;
    bool fwd = true;
};

inline ArcToken parse_token(const std::string& tok) {
    ArcToken a;
    std::string body = tok;
    if (!body.empty() && body[0] == '-') {
        a.fwd = false;
        body = body.substr(1);
    }
    if (body.empty()) fail(ErrorCode::MalformedInput, "empty arc token");
    char f = body[0];
    if (f == 'S') {
        if (!a.fwd) fail(ErrorCode::MalformedInput, "suture arcs carry no orientation sign: " + tok);
        a.is_suture = true;
        a.suture = body;
        return a;
    }
    if (f != 'A' && f != 'B' && f != 'D')
        fail(ErrorCode::MalformedInput, "unrecognized arc token: " + tok);
    a.fam = (f == 'A') ? 0 : (f == 'B') ? 1 : 2;
    auto dot = body.find('.');
    if (dot == std::string::npos || dot < 2 || dot + 1 >= body.size())
        fail(ErrorCode::MalformedInput, "bad segment token: " + tok);
    try {
        size_t used = 0;
        a.circle = std::stoi(body.substr(1, dot - 1), &used);
        if (used != dot - 1) throw std::invalid_argument("trailing");
        a.index = std::stoi(body.substr(dot + 1), &used);
        if (used != body.size() - dot - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        fail(ErrorCode::MalformedInput, "bad segment token: " + tok);
    }
    if (a.circle < 0 || a.index < 0) fail(ErrorCode::MalformedInput, "bad segment token: " + tok);
    return a;
}

}  // namespace sfh::detail
