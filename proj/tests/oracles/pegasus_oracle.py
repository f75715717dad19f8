# Copyright 2026 The anneal-rbm Authors
#
#    Licensed under the Apache License, Version 2.0 (the "License");
#    you may not use this file except in compliance with the License.
#    You may obtain a copy of the License at
#
#        http://www.apache.org/licenses/LICENSE-2.0
#
#    Unless required by applicable law or agreed to in writing, software
#    distributed under the License is distributed on an "AS IS" BASIS,
#    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#    See the License for the specific language governing permissions and
#    limitations under the License.

"""Reference Pegasus numbers frozen in tests/unit/test_topology.cpp.

Prints node count, edge count, max degree, FNV-1a 64 fingerprint of the
sorted edge list ("a,b;a,b;...") and the degree histogram for each m.

    python3 tests/oracles/pegasus_oracle.py [m ...]
"""

import importlib.util
import os
import sys
import types


def _load_pegasus():
    try:
        import dwave_networkx
        return dwave_networkx.generators.pegasus
    except ImportError:
        pass
    # Fall back to loading the generator modules straight from an installed
    # tree when the package's own dependencies are not importable.
    spec = importlib.util.find_spec("dwave_networkx")
    if spec is None or not spec.submodule_search_locations:
        sys.exit("dwave_networkx is not installed")
    base = list(spec.submodule_search_locations)[0]

    def load(name, path):
        s = importlib.util.spec_from_file_location(name, path)
        mod = importlib.util.module_from_spec(s)
        sys.modules[name] = mod
        s.loader.exec_module(mod)
        return mod

    pkg = types.ModuleType("dwave_networkx")
    pkg.__path__ = [base]
    sys.modules["dwave_networkx"] = pkg
    load("dwave_networkx.exceptions", os.path.join(base, "exceptions.py"))
    gen = types.ModuleType("dwave_networkx.generators")
    gen.__path__ = [os.path.join(base, "generators")]
    sys.modules["dwave_networkx.generators"] = gen
    for name in ("common", "chimera"):
        load("dwave_networkx.generators." + name, os.path.join(base, "generators", name + ".py"))
    return load("dwave_networkx.generators.pegasus", os.path.join(base, "generators", "pegasus.py"))


def fnv1a64(text):
    h = 0xCBF29CE484222325
    for b in text.encode():
        h ^= b
        h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h


def main(argv):
    pegasus = _load_pegasus()
    for m in [int(a) for a in argv] or [2, 3, 4, 16]:
        g = pegasus.pegasus_graph(m, fabric_only=False)
        edges = sorted(tuple(sorted(e)) for e in g.edges())
        degrees = [d for _, d in g.degree()]
        hist = [0] * (max(degrees) + 1)
        for d in degrees:
            hist[d] += 1
        print("m=%d nodes=%d edges=%d max_degree=%d fnv=%#018x" % (
            m, g.number_of_nodes(), g.number_of_edges(), max(degrees),
            fnv1a64(";".join("%d,%d" % e for e in edges))))
        print("  histogram", hist)


if __name__ == "__main__":
    main(sys.argv[1:])
