# A train approaches a station; three dispatchers (A, B, C) each control the
# switches in their own zone. State 7 is the safe platform, state 8 the crash.
ts v1 states=9 init=0
bad 8
edge 0 1 move
edge 0 2 move
edge 1 3 move
edge 1 4 move
edge 1 7 move
edge 2 3 move
edge 2 6 move
edge 3 4 move
edge 3 5 move
edge 4 7 move
edge 4 8 move
edge 5 6 move
edge 5 8 move
edge 6 8 move
edge 7 7 stay
edge 8 8 stay
actor A 0 1
actor B 2 3
actor C 4 5 6
aux 7 8
