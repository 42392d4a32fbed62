"""fsmkit: build, run, test and transform automata and grammars."""

from .core import (
    ACCEPT,
    BLANK,
    DEFAULT_COUNT,
    DEFAULT_MAX_LEN,
    DEFAULT_SEED,
    EMP,
    LEFT,
    REJECT,
    RIGHT,
    FsmError,
    Rng,
    StepLimitExceeded,
    format_word,
    gen_symbol,
    parse_word,
    random_word,
)
from .ctm import BRANCH, GOTO, VAR, Ctm, apply_ctm, combine_tms
from .deciders import cfg_empty
from .definitions import DefinitionError, load_definition, parse_definition, render_definition
from .grammars import (
    Derivation,
    Grammar,
    NotInLanguage,
    Undecided,
    deriv,
    grammar_nonterminals,
    grammar_rename_nts,
    grammar_rules,
    grammar_start,
    grammar_terminals,
    is_valid_derivation,
    make_cfg,
    make_csg,
    make_rg,
)
from .machines import (
    StateMachine,
    TmConfig,
    apply_sm,
    make_dfa,
    make_ndfa,
    make_pda,
    make_tm,
    show_transitions_sm,
    sm_alphabet,
    sm_finals,
    sm_rules,
    sm_stack_alphabet,
    sm_start,
    sm_states,
)
from .regexp import (
    concat_regexp,
    empty_regexp,
    kleenestar_regexp,
    null_regexp,
    parse_regexp,
    printable_regexp,
    symbol_regexp,
    union_regexp,
)
from .testers import (
    EquivReport,
    TestReport,
    both_deriv,
    same_result_sm,
    test_equiv_grammar,
    test_equiv_sm,
    test_grammar,
    test_sm,
)
from .transforms import (
    complement_sm,
    concat_sm,
    fsa_to_regexp,
    grammar_to_sm,
    intersection_sm,
    kleenestar_sm,
    ndfa_to_dfa,
    regexp_to_fsa,
    rename_states_sm,
    reverse_fsa,
    sm_to_grammar,
    union_sm,
)

__version__ = "0.1.0"
