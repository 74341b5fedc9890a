from dehncube.algebra import f2linalg, tqft
