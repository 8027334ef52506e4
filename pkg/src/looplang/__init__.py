"""Loop automata and loop problems of finitely generated monoids and semigroups."""

from .algebra import (
    MONOID,
    SEMIGROUP,
    FiniteSemigroupTable,
    FreeCommutativeOracle,
    FreeMonoidOracle,
    GeneratorMap,
    MonoidOracle,
    ReesElement,
    ReesSpec,
    TableOracle,
    adjoin_identity,
    eval_word,
    free_commutative_oracle,
    free_monoid_oracle,
    is_group,
    is_right_cancellative,
    is_surjective,
    rees_to_table,
)
from .automata import (
    Dfa,
    Nfa,
    determinize,
    dfa_equivalent,
    inverse_morphism_image,
    kleene_star,
    minimize,
    monoid_iso_check,
    syntactic_monoid,
)
from .closure import (
    ClosureReport,
    Property,
    identity_language_check,
    is_deletion_closed,
    is_insertion_closed,
    reconstruct_monoid,
)
from .corpus import CorpusItem, builtin, load_corpus, load_item
from .errors import LoopError, SpecError, Unsupported
from .invhull import (
    PolycyclicElement,
    bicyclic_eval,
    bounded_syntactic_equivalence,
    inverse_hull_finite,
    polycyclic_eval,
    verify_inverse_hull_theorem,
    verify_minimality,
)
from .kernels import BACKEND
from .loopcore import (
    cayley_graph,
    distinct_cones_witness,
    generator_change,
    loop_automaton,
    loop_ball,
    loop_membership,
    loop_problem_dfa,
    semigroup_monoid_relation_check,
    words_equal,
    zigzag_check,
)
from .transduce import (
    cs_loop_problem,
    cs_subgroup_restriction_check,
    cs_transducer,
    cs_transducer_spec,
    multiplication_table_language,
    nonreturning_loops,
)
from .words import Alphabet, SignedLetter, involute, shortlex_words, zigzag_factor

__version__ = "0.1.0"
