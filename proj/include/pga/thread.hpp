#pragma once

// Regular threads produced by instruction sequences under execution, and
// their application to service families.

#include "pga/sequence.hpp"
#include "pga/service.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace pga {

struct ThreadNode
{
    enum class Kind
    {
        stop,
        dead,
        branch
    };

    Kind kind = Kind::dead;
    std::string focus;
    std::string method;
    std::size_t on_true = 0;  // reply T
    std::size_t on_false = 0; // reply F

    friend bool operator==( const ThreadNode&, const ThreadNode& ) = default;
};

// Finite graph of thread nodes. Every node is reachable from the root, and
// nodes are numbered in breadth-first order from the root (root = 0).
class RegularThread
{
public:
    RegularThread( std::vector<ThreadNode> nodes, std::size_t root );

    [[nodiscard]] const std::vector<ThreadNode>& nodes() const { return _nodes; }
    [[nodiscard]] const ThreadNode& node( std::size_t i ) const { return _nodes[ i ]; }
    [[nodiscard]] std::size_t root() const { return 0; }
    [[nodiscard]] std::size_t size() const { return _nodes.size(); }
    // No branch node can reach itself again.
    [[nodiscard]] bool acyclic() const { return _acyclic; }

    static RegularThread stop();
    static RegularThread dead();

private:
    std::vector<ThreadNode> _nodes;
    bool _acyclic = true;
};

RegularThread extract( const CanonicalSequence& seq );

// The segment with entry b and exit e turned into a whole instruction
// sequence: #b ; S when e = 0, otherwise #b ; S ; #0^(e-1) ; !.
CanonicalSequence embed( const SequenceTerm& seq, std::uint64_t entry, std::uint64_t exit );

struct ApplyResult
{
    bool budget_exhausted = false;
    ServiceFamily family; // empty when the thread becomes inactive or diverges
};

// Runs the thread against the family. Revisiting a (node, family) pair means
// the thread never stops, which yields the empty family. Threads that keep
// growing a counter without cycling are cut off after
// bound * size * (largest initial counter content + 1) steps.
ApplyResult apply( const RegularThread& thread, const ServiceFamily& family, std::uint64_t bound = 100 );

// Coarsest bisimulation quotient, renumbered from the root.
RegularThread minimize( const RegularThread& thread );

bool bisimilar( const RegularThread& a, const RegularThread& b );

// One node per line: `n0: branch c.iszero -> n1 / n2`, `n1: stop`, `n2: dead`.
std::string dump( const RegularThread& thread );

} // namespace pga
