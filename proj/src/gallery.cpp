#include "relmatch/gallery.hpp"

namespace relmatch::gallery {

DeltaMatrix wildcard_relation() {
    return DeltaMatrix(Alphabet({"*", "x"}), Alphabet({"a", "b"}),
                       {{1, 1}, {1, 0}});
}

DeltaMatrix exact_match_relation() {
    return DeltaMatrix(Alphabet({"x", "y"}), Alphabet({"a", "b"}),
                       {{1, 0}, {0, 1}});
}

DeltaMatrix degenerate_and_relation() {
    return DeltaMatrix(Alphabet({"x", "y", "z"}), Alphabet({"a", "b", "c"}),
                       {{0, 0, 0}, {0, 1, 1}, {0, 1, 1}});
}

DeltaMatrix reducible_relation() {
    return DeltaMatrix(Alphabet({"v", "w", "x", "y", "z"}),
                       Alphabet({"a", "b", "c", "d", "e", "f"}),
                       {{0, 1, 0, 1, 1, 0},
                        {0, 0, 0, 0, 0, 0},
                        {1, 0, 1, 0, 0, 0},
                        {0, 1, 0, 1, 1, 0},
                        {1, 0, 1, 0, 0, 0}});
}

DeltaMatrix linf_relation() {
    return DeltaMatrix(Alphabet({"1", "0"}), Alphabet({"2", "3"}),
                       {{1, 2}, {2, 3}});
}

DeltaMatrix linf_threshold_relation() {
    return DeltaMatrix(Alphabet({"1", "0"}), Alphabet({"2", "3"}),
                       {{1, 1}, {1, 0}});
}

DeltaMatrix indexing_relation() {
    return DeltaMatrix(Alphabet({"x"}), Alphabet({"a", "b"}), {{0, 1}});
}

} // namespace relmatch::gallery
