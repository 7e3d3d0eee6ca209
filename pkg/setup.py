from setuptools import setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install
    ext_modules = []
else:
    ext_modules = cythonize(["src/skein/_ckernels.pyx"], language_level=3, quiet=True)

setup(ext_modules=ext_modules)
