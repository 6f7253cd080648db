from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; grtbv.canon falls back at import
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("grtbv._canon", ["src/grtbv/_canon.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
