"""Reuse Scheme B for distributed computing and for a cache-aided interference channel."""
import numpy as np

from projcache.extensions import cdc_from_scheme_b, ic_scheme, zero_force_round

c = cdc_from_scheme_b(4, 1, 2, 1, 2)
print('Distributed computing from Scheme B (4, 1, 2, 1, 2):')
print('  nodes K =', c.K, ' batches F =', c.F, ' computation load', c.computation_load,
      ' communication load', c.communication_load)

print('\nInterference channel with (k, m, q, L) = (4, 3, 2, 2):')
ic = ic_scheme(4, 3, 2, 2)
print('  receivers', ic.K_R, ' cache fraction', ic.cache_fraction, ' subfiles', ic.F, ' sum-DoF', ic.sum_dof)
demands = np.arange(ic.K_R) % ic.N
res = zero_force_round(ic, 0, demands, seed=1)
print('  round 0 serves', len(ic.served(0)), 'receivers; worst interference residual',
      f'{max(res.residuals.values()):.1e}')
