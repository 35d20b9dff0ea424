#pragma once

#include "privfn/alphabet.hpp"
#include "privfn/value_table.hpp"

namespace privfn {

// The object under study: Alice computes with x, Bob with y; f is the value
// both may learn, g must stay hidden from Alice, h from Bob. All three tables
// share the X x Y shape.
struct FunctionTriple {
    Alphabet x_alphabet;
    Alphabet y_alphabet;
    ValueTable f;
    ValueTable g;
    ValueTable h;

    FunctionTriple() = default;
    FunctionTriple(Alphabet x, Alphabet y, ValueTable f_, ValueTable g_, ValueTable h_);

    int x_size() const { return x_alphabet.size(); }
    int y_size() const { return y_alphabet.size(); }
};

} // namespace privfn
