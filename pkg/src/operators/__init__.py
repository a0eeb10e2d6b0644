"""Crossover and mutation operators for value strings and permutations."""

from .value_crossover import fixed_point_crossover, kpoint_crossover, multi_parent_children, param_uniform_crossover
from .permutation_crossover import (
    c1_crossover,
    crossover_permutations,
    order_based_crossover,
    pmx_crossover,
    pux_crossover,
    pux_crossover_with_template,
)
from .mutation import mutate_permutation, scramble_mutation, single_gene_mutation, swap_mutation
from .adaptive import AdaptiveGenes, AdaptiveSpec, CrossoverTag, Inheritance, inherit_adaptive, init_adaptive, mutate_adaptive

__all__ = [
    "fixed_point_crossover",
    "kpoint_crossover",
    "multi_parent_children",
    "param_uniform_crossover",
    "c1_crossover",
    "crossover_permutations",
    "order_based_crossover",
    "pmx_crossover",
    "pux_crossover",
    "pux_crossover_with_template",
    "mutate_permutation",
    "scramble_mutation",
    "single_gene_mutation",
    "swap_mutation",
    "AdaptiveGenes",
    "AdaptiveSpec",
    "CrossoverTag",
    "Inheritance",
    "inherit_adaptive",
    "init_adaptive",
    "mutate_adaptive",
]
