#include <designlat/builtins.hpp>
#include <designlat/errors.hpp>

namespace designlat {

const std::vector<BuiltinInfo>& builtin_instances()
{
    static const std::vector<BuiltinInfo> list = {
        { "fano", "triangle decomposition of K_7 (Steiner triple systems on 7 points)" },
        { "twisted-octahedron", "null signed octahedron in a rainbow K4 triangle system" },
        { "tryst-9", "tryst table problem on 9 players" },
        { "sudoku-2", "Sudoku squares of order 4 as a partite decomposition" },
        { "latin-3", "Latin squares of order 3 as partite triangle decompositions of K_{3,3,3}" },
        { "kts-9", "Kirkman triple systems on 9 points through the resolvable reduction" },
        { "rainbow-fixed-q3n7", "fixed rainbow triangle decomposition of three coloured copies of K_7" },
    };
    return list;
}

ProblemInstance build_builtin(const std::string& name)
{
    ProblemInstance (*make)() = nullptr;
    if (name == "fano")
        make = [] { return build_nonpartite(Hypergraph::complete(3, 2), Hypergraph::complete(7, 2)); };
    else if (name == "twisted-octahedron")
        make = [] { return build_twisted_octahedron(1).instance; };
    else if (name == "tryst-9")
        make = [] { return build_tryst(9); };
    else if (name == "sudoku-2")
        make = [] { return build_sudoku(2); };
    else if (name == "latin-3")
        make = [] { return build_latin(3); };
    else if (name == "kts-9")
        make = [] { return reduce_resolvable(Hypergraph::complete(3, 2), Hypergraph::complete(9, 2), 1).instance; };
    else if (name == "rainbow-fixed-q3n7")
        make = [] { return build_rainbow(3, 2, 7, RainbowMode::Fixed); };
    if (!make)
        throw InputError("unknown builtin instance: " + name);
    auto inst = make();
    inst.provenance["builtin"] = name;
    return inst;
}

} // namespace designlat
