"""Compare the achieved rate of a scheme with the lower bounds it must respect."""
from fractions import Fraction

from projcache import bound_cheng, bound_corollary2, bound_theorem6, bound_wtp, scheme_b_params
from projcache.bounds import exhaustive_ordering, greedy_ordering, mais_bound
from projcache.graph import toy_graph
from projcache.render import fmt_rational

print('Index-coding view on a 4 user, 5 subfile toy graph:')
g = toy_graph()
order, value = exhaustive_ordering(g)
print('  best ordering', order, 'gives a MAIS bound of', value)
print('  greedy ordering gives', mais_bound(g, greedy_ordering(g)))

print('\nScheme B (6, 2, 2, 1, 2) against the closed-form bounds:')
rep = scheme_b_params(6, 2, 2, 1, 2)
K, F, mn = rep.K, rep.F, rep.cache_fraction
print('  K =', K, ' F =', F, ' M/N =', mn)
for name, fn in [('corollary', lambda: bound_corollary2(K, F, mn)),
                 ('nested ceilings', lambda: bound_theorem6(K, F, mn)),
                 ('cheng', lambda: bound_cheng(K, F, mn)),
                 ('wtp (F unlimited)', lambda: bound_wtp(K, mn))]:
    print(f'  {name:18s}', fmt_rational(fn()))
print('  achieved S/F      ', fmt_rational(Fraction(rep.S, F)))
