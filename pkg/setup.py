import os
import pathlib

from setuptools import find_packages, setup


def prerelease_local_scheme(version) -> str:
    """
    Return local scheme version unless building a tag or master in CI.

    Tagged and master builds get a PEP440 compliant pre-release version number
    (e.g. 0.0.0.dev<N>) without the local hash.
    """
    from setuptools_scm.version import get_local_node_and_date

    ci_tag = os.getenv('CIRCLE_TAG')
    ci_branch = os.getenv('CIRCLE_BRANCH')
    if ci_tag or (ci_branch == 'master'):
        return ''
    else:
        return get_local_node_and_date(version)


with (pathlib.Path(__file__).parent / 'README.md').open() as description_stream:
    long_description = description_stream.read()


setup(
    name='bmv-entanglement',
    description='Gravitationally induced entanglement of two dephasing mesoscopic particles',
    long_description=long_description,
    long_description_content_type='text/markdown',
    license='Apache 2.0',
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Apache Software License',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Topic :: Scientific/Engineering :: Physics',
    ],
    packages=find_packages(exclude=['tests']),
    python_requires='>=3.8.0',
    install_requires=[
        'click',
        'click-pathlib',
        'numpy',
        'pandas>=1.5',
        'scipy',
    ],
    use_scm_version={'local_scheme': prerelease_local_scheme},
    entry_points="""
        [console_scripts]
        bmv-entanglement=bmv_entanglement.__main__:cli
    """,
)
