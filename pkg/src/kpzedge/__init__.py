"""GOE-edge, Painleve II, and Fredholm-determinant numerics."""

__version__ = "0.1.0"
