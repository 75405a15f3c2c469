"""Walk through the two smallest schemes over GF(2): points vs planes, and independent pairs."""
from projcache import build_scheme_a, build_scheme_b, verify_cover
from projcache.delivery import cached_matrix
from projcache.graph import verify_biregular

spacer = '_' * 60

print('Scheme A with (k, m, t, q) = (3, 1, 1, 2).')
print('Users are the 7 points of the projective plane, subfiles are its 7 lines.')
s = build_scheme_a(3, 1, 1, 2, return_scheme=True)
rep = verify_cover(s.graph, s.cover)
print(rep.line())
print('Cache matrix (rows are users, 1 means the subfile is stored):')
print(cached_matrix(s.graph).astype(int))
print('Each of the', rep.S, 'transmissions XORs', rep.g, 'subfiles for', rep.g, 'users at once.')
print('Left and right degrees:', verify_biregular(s.graph))

print(spacer)
print('\nScheme B with (k, n, m, l, q) = (3, 1, 2, 1, 2).')
print('Users are points again, subfiles are independent pairs of points.')
s = build_scheme_b(3, 1, 2, 1, 2, return_scheme=True)
rep = verify_cover(s.graph, s.cover)
print(rep.line())
print('User 0 caches', len(s.graph.cached(0)), 'of', rep.F, 'subfiles.')
print('Each transmission serves', rep.g, 'users, so the rate is S/F =', rep.rate)
