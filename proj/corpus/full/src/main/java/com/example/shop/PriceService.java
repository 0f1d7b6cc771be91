package com.example.shop;

public interface PriceService {
    int priceOf(String sku);

    int discountFor(String customerName);

    String currency();
}
